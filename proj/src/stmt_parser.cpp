#include "changectx/stmt_parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace changectx {

namespace {

const std::unordered_set<std::string>& java_keywords() {
    static const std::unordered_set<std::string> kw = {
        "abstract", "assert",     "boolean",   "break",      "byte",      "case",
        "catch",    "char",       "class",     "const",      "continue",  "default",
        "do",       "double",     "else",      "enum",       "extends",   "final",
        "finally",  "float",      "for",       "goto",       "if",        "implements",
        "import",   "instanceof", "int",       "interface",  "long",      "native",
        "new",      "package",    "private",   "protected",  "public",    "return",
        "short",    "static",     "strictfp",  "super",      "switch",    "synchronized",
        "this",     "throw",      "throws",    "transient",  "try",       "void",
        "volatile", "while",      "true",      "false",      "null",      "var",
        "record",   "yield",
    };
    return kw;
}

bool is_keyword(const std::string& s) { return java_keywords().count(s) > 0; }

bool is_primitive(const std::string& s) {
    static const std::unordered_set<std::string> prim = {
        "boolean", "byte", "char", "short", "int", "long", "float", "double", "void", "var",
    };
    return prim.count(s) > 0;
}

bool is_modifier(const std::string& s) {
    static const std::unordered_set<std::string> mods = {
        "public", "private",  "protected", "static",   "final",        "abstract",
        "native", "strictfp", "transient", "volatile", "synchronized", "default",
    };
    return mods.count(s) > 0;
}

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Two same-length views of one text: comments blanked, and comments plus
// literal bodies blanked (for tokenizing).
struct MaskedSource {
    std::string no_comments;
    std::string masked;
};

MaskedSource mask_source(std::string_view src) {
    MaskedSource out;
    out.no_comments.assign(src.begin(), src.end());
    out.masked.assign(src.begin(), src.end());
    enum State { Code, Line, Block, Str, Chr } state = Code;
    for (size_t i = 0; i < src.size(); ++i) {
        char c = src[i];
        char next = i + 1 < src.size() ? src[i + 1] : '\0';
        switch (state) {
            case Code:
                if (c == '/' && next == '/') {
                    state = Line;
                    out.no_comments[i] = out.masked[i] = ' ';
                } else if (c == '/' && next == '*') {
                    state = Block;
                    out.no_comments[i] = out.masked[i] = ' ';
                } else if (c == '"') {
                    state = Str;
                    out.masked[i] = ' ';
                } else if (c == '\'') {
                    state = Chr;
                    out.masked[i] = ' ';
                }
                break;
            case Line:
                if (c == '\n') state = Code;
                else out.no_comments[i] = out.masked[i] = ' ';
                break;
            case Block:
                if (c == '*' && next == '/') {
                    out.no_comments[i] = out.masked[i] = ' ';
                    out.no_comments[i + 1] = out.masked[i + 1] = ' ';
                    ++i;
                    state = Code;
                } else if (c != '\n') {
                    out.no_comments[i] = out.masked[i] = ' ';
                }
                break;
            case Str:
                if (c == '\\' && i + 1 < src.size()) {
                    out.masked[i] = out.masked[i + 1] = ' ';
                    ++i;
                } else {
                    out.masked[i] = ' ';
                    if (c == '"') state = Code;
                }
                break;
            case Chr:
                if (c == '\\' && i + 1 < src.size()) {
                    out.masked[i] = out.masked[i + 1] = ' ';
                    ++i;
                } else {
                    out.masked[i] = ' ';
                    if (c == '\'') state = Code;
                }
                break;
        }
    }
    return out;
}

struct Token {
    enum Kind { Ident, Number, Punct } kind;
    std::string text;
    size_t begin = 0;
    size_t end = 0;  // one past
};

std::vector<Token> tokenize(std::string_view masked) {
    std::vector<Token> toks;
    size_t i = 0;
    while (i < masked.size()) {
        char c = masked[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (ident_start(c)) {
            size_t j = i + 1;
            while (j < masked.size() && ident_char(masked[j])) ++j;
            toks.push_back({Token::Ident, std::string(masked.substr(i, j - i)), i, j});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i + 1;
            while (j < masked.size() && (ident_char(masked[j]) || masked[j] == '.')) ++j;
            toks.push_back({Token::Number, std::string(masked.substr(i, j - i)), i, j});
            i = j;
        } else {
            toks.push_back({Token::Punct, std::string(1, c), i, i + 1});
            ++i;
        }
    }
    return toks;
}

bool is_punct(const Token& t, const char* s) { return t.kind == Token::Punct && t.text == s; }
bool is_ident(const Token& t, const char* s) { return t.kind == Token::Ident && t.text == s; }

// ---------------------------------------------------------------------------
// def/use extraction
// ---------------------------------------------------------------------------

bool has_out_of_subset_syntax(const std::vector<Token>& toks, size_t lo, size_t hi) {
    for (size_t i = lo; i + 1 < hi; ++i) {
        if (toks[i].end != toks[i + 1].begin) continue;
        if (is_punct(toks[i], "-") && is_punct(toks[i + 1], ">")) return true;  // lambda
        if (is_punct(toks[i], ":") && is_punct(toks[i + 1], ":")) return true;  // method ref
    }
    return false;
}

// Uses/callees from an expression range. Root-name rule: in `a.b.c` only
// `a` is a use; an identifier immediately followed by `(` is a callee.
void uses_from_expr(const std::vector<Token>& toks, size_t lo, size_t hi, DefUse& out) {
    for (size_t i = lo; i < hi; ++i) {
        const Token& t = toks[i];
        if (t.kind != Token::Ident || is_keyword(t.text)) continue;
        bool after_dot = i > lo && is_punct(toks[i - 1], ".");
        bool before_call = i + 1 < hi && is_punct(toks[i + 1], "(");
        if (before_call) {
            out.callees.insert(t.text);
        } else if (!after_dot) {
            out.uses.insert(t.text);
        }
    }
}

size_t matching_close(const std::vector<Token>& toks, size_t open, size_t hi,
                      const char* open_s, const char* close_s) {
    int depth = 0;
    for (size_t i = open; i < hi; ++i) {
        if (is_punct(toks[i], open_s)) ++depth;
        else if (is_punct(toks[i], close_s) && --depth == 0) return i;
    }
    return hi;
}

// Skips a type expression at `i` (identifier or primitive, with generic,
// array, varargs and qualified-name suffixes). Returns `i` when there is
// no type here.
size_t skip_type(const std::vector<Token>& toks, size_t i, size_t hi) {
    if (i >= hi || toks[i].kind != Token::Ident) return i;
    if (is_keyword(toks[i].text) && !is_primitive(toks[i].text)) return i;
    size_t j = i + 1;
    while (j < hi) {
        if (is_punct(toks[j], ".") && j + 2 < hi && is_punct(toks[j + 1], ".") &&
            is_punct(toks[j + 2], ".")) {
            j += 3;  // varargs
        } else if (is_punct(toks[j], ".") && j + 1 < hi && toks[j + 1].kind == Token::Ident) {
            j += 2;
        } else if (is_punct(toks[j], "<")) {
            size_t close = matching_close(toks, j, hi, "<", ">");
            if (close >= hi) return i;  // comparison, not generics
            j = close + 1;
        } else if (is_punct(toks[j], "[") && j + 1 < hi && is_punct(toks[j + 1], "]")) {
            j += 2;
        } else {
            break;
        }
    }
    return j;
}

// Last identifier of each top-level comma group (parameter names).
std::vector<std::string> param_names(const std::vector<Token>& toks, size_t lo, size_t hi) {
    std::vector<std::string> names;
    int depth = 0;
    std::string last_ident;
    for (size_t i = lo; i < hi; ++i) {
        const Token& t = toks[i];
        if (t.kind == Token::Punct) {
            if (t.text == "(" || t.text == "[" || t.text == "<") ++depth;
            else if (t.text == ")" || t.text == "]" || t.text == ">") --depth;
            else if (t.text == "," && depth == 0) {
                if (!last_ident.empty()) names.push_back(last_ident);
                last_ident.clear();
            }
        } else if (t.kind == Token::Ident && !is_keyword(t.text)) {
            last_ident = t.text;
        }
    }
    if (!last_ident.empty()) names.push_back(last_ident);
    return names;
}

// `[modifiers] Type name ( ... ) [throws ...]` and nothing else.
bool looks_like_signature(const std::vector<Token>& toks, size_t lo, size_t hi,
                          bool allow_bare_name) {
    size_t i = lo;
    while (i < hi && toks[i].kind == Token::Ident && is_modifier(toks[i].text)) ++i;
    if (i < hi && is_punct(toks[i], "<")) {
        size_t close = matching_close(toks, i, hi, "<", ">");
        if (close >= hi) return false;
        i = close + 1;
    }
    size_t after_type = skip_type(toks, i, hi);
    size_t name_pos;
    if (after_type > i && after_type < hi && toks[after_type].kind == Token::Ident &&
        !is_keyword(toks[after_type].text)) {
        name_pos = after_type;
    } else if (allow_bare_name && i < hi && toks[i].kind == Token::Ident &&
               !is_keyword(toks[i].text)) {
        name_pos = i;
    } else {
        return false;
    }
    if (name_pos + 1 >= hi || !is_punct(toks[name_pos + 1], "(")) return false;
    size_t close = matching_close(toks, name_pos + 1, hi, "(", ")");
    if (close >= hi) return false;
    for (size_t j = close + 1; j < hi; ++j) {
        const Token& t = toks[j];
        if (t.kind == Token::Ident) {
            if (!is_ident(t, "throws") && is_keyword(t.text) && !is_primitive(t.text))
                return false;
        } else if (!is_punct(t, ",") && !is_punct(t, ".")) {
            return false;
        }
    }
    return true;
}

struct SignatureInfo {
    std::string name;
    std::vector<std::string> params;
};

SignatureInfo parse_signature(const std::vector<Token>& toks, size_t lo, size_t hi) {
    SignatureInfo info;
    size_t open = hi;
    for (size_t i = lo; i < hi; ++i)
        if (is_punct(toks[i], "(")) { open = i; break; }
    if (open == hi || open == lo) return info;
    info.name = toks[open - 1].text;
    size_t close = matching_close(toks, open, hi, "(", ")");
    info.params = param_names(toks, open + 1, close);
    return info;
}

// Root of an lvalue access path; `this.` is transparent, index
// expressions contribute uses.
void lvalue_def(const std::vector<Token>& toks, size_t lo, size_t hi, DefUse& out) {
    size_t i = lo;
    if (i + 1 < hi && is_ident(toks[i], "this") && is_punct(toks[i + 1], ".")) i += 2;
    size_t after_type = skip_type(toks, i, hi);
    if (after_type > i && after_type < hi && toks[after_type].kind == Token::Ident &&
        !is_keyword(toks[after_type].text)) {
        out.defs.insert(toks[after_type].text);  // `Type name = ...`
        i = after_type + 1;
    } else if (i < hi && toks[i].kind == Token::Ident && !is_keyword(toks[i].text)) {
        out.defs.insert(toks[i].text);
        ++i;
    }
    while (i < hi) {
        if (is_punct(toks[i], "[")) {
            size_t close = matching_close(toks, i, hi, "[", "]");
            uses_from_expr(toks, i + 1, std::min(close, hi), out);
            i = close + 1;
        } else {
            ++i;
        }
    }
}

// Recognizes =, +=, -=, *=, /=, %=, &=, |=, ^=, <<=, >>=, >>>= starting at
// token i. Comparison and equality operators are rejected.
bool is_assign_op(const std::vector<Token>& toks, size_t i, size_t hi, size_t& op_len,
                  bool& compound) {
    auto adjacent = [&](size_t a, size_t b) { return toks[a].end == toks[b].begin; };
    if (is_punct(toks[i], "=")) {
        if (i + 1 < hi && is_punct(toks[i + 1], "=") && adjacent(i, i + 1)) return false;
        if (i > 0 && adjacent(i - 1, i) && toks[i - 1].kind == Token::Punct &&
            std::string("=!<>+-*/%&|^").find(toks[i - 1].text[0]) != std::string::npos)
            return false;  // second char of a two-char operator
        op_len = 1;
        compound = false;
        return true;
    }
    static const char* simple_ops = "+-*/%&|^";
    if (toks[i].kind == Token::Punct && toks[i].text.size() == 1 &&
        std::string(simple_ops).find(toks[i].text[0]) != std::string::npos) {
        if (i + 1 < hi && is_punct(toks[i + 1], "=") && adjacent(i, i + 1) &&
            !(i + 2 < hi && is_punct(toks[i + 2], "=") && adjacent(i + 1, i + 2))) {
            op_len = 2;
            compound = true;
            return true;
        }
    }
    if ((is_punct(toks[i], "<") || is_punct(toks[i], ">")) && i + 1 < hi &&
        toks[i + 1].text == toks[i].text && adjacent(i, i + 1)) {
        size_t j = i + 1;
        if (is_punct(toks[i], ">") && j + 1 < hi && is_punct(toks[j + 1], ">") &&
            adjacent(j, j + 1))
            ++j;
        if (j + 1 < hi && is_punct(toks[j + 1], "=") && adjacent(j, j + 1)) {
            op_len = j + 2 - i;
            compound = true;
            return true;
        }
    }
    return false;
}

// `[modifiers] Type name` followed by `=`, `,`, `:`, `;` or the end.
bool looks_like_declaration(const std::vector<Token>& toks, size_t lo, size_t hi) {
    size_t i = lo;
    while (i < hi && toks[i].kind == Token::Ident && is_modifier(toks[i].text)) ++i;
    size_t after_type = skip_type(toks, i, hi);
    if (after_type == i) return false;
    if (after_type >= hi || toks[after_type].kind != Token::Ident ||
        is_keyword(toks[after_type].text))
        return false;
    size_t next = after_type + 1;
    while (next + 1 < hi && is_punct(toks[next], "[") && is_punct(toks[next + 1], "]")) next += 2;
    if (next >= hi) return true;
    return is_punct(toks[next], "=") || is_punct(toks[next], ",") || is_punct(toks[next], ":") ||
           is_punct(toks[next], ";");
}

void extract_declaration(const std::vector<Token>& toks, size_t lo, size_t hi, DefUse& out) {
    size_t i = lo;
    while (i < hi && toks[i].kind == Token::Ident && is_modifier(toks[i].text)) ++i;
    i = skip_type(toks, i, hi);
    while (i < hi) {
        if (toks[i].kind == Token::Ident && !is_keyword(toks[i].text)) {
            out.defs.insert(toks[i].text);
            ++i;
        }
        while (i + 1 < hi && is_punct(toks[i], "[") && is_punct(toks[i + 1], "]")) i += 2;
        if (i < hi && is_punct(toks[i], "=")) {
            int depth = 0;
            size_t j = i + 1;
            for (; j < hi; ++j) {
                if (is_punct(toks[j], "(") || is_punct(toks[j], "[") || is_punct(toks[j], "{"))
                    ++depth;
                else if (is_punct(toks[j], ")") || is_punct(toks[j], "]") ||
                         is_punct(toks[j], "}"))
                    --depth;
                else if (is_punct(toks[j], ",") && depth == 0)
                    break;
            }
            uses_from_expr(toks, i + 1, j, out);
            i = j;
        }
        if (i < hi && is_punct(toks[i], ",")) ++i;
        else break;
    }
}

void extract_general(const std::vector<Token>& toks, size_t lo, size_t hi, DefUse& out) {
    // ++/-- targets are both defined and used
    for (size_t i = lo; i + 1 < hi; ++i) {
        bool inc = (is_punct(toks[i], "+") && is_punct(toks[i + 1], "+")) ||
                   (is_punct(toks[i], "-") && is_punct(toks[i + 1], "-"));
        if (!inc || toks[i].end != toks[i + 1].begin) continue;
        size_t ident_pos = hi;
        if (i > lo && (toks[i - 1].kind == Token::Ident || is_punct(toks[i - 1], "]"))) {
            size_t j = i;  // postfix: walk back to the path root
            while (j > lo && (toks[j - 1].kind == Token::Ident || is_punct(toks[j - 1], ".") ||
                              is_punct(toks[j - 1], "[") || is_punct(toks[j - 1], "]") ||
                              toks[j - 1].kind == Token::Number))
                --j;
            ident_pos = j;
        } else if (i + 2 < hi && toks[i + 2].kind == Token::Ident) {
            ident_pos = i + 2;  // prefix
        }
        if (ident_pos < hi && toks[ident_pos].kind == Token::Ident &&
            !is_keyword(toks[ident_pos].text)) {
            out.defs.insert(toks[ident_pos].text);
            out.uses.insert(toks[ident_pos].text);
        }
    }

    // top-level assignment operators (possibly chained)
    std::vector<std::pair<size_t, size_t>> ops;  // (index, length)
    std::vector<bool> compounds;
    int pdepth = 0, bdepth = 0;
    for (size_t i = lo; i < hi; ++i) {
        if (is_punct(toks[i], "(")) ++pdepth;
        else if (is_punct(toks[i], ")")) --pdepth;
        else if (is_punct(toks[i], "[")) ++bdepth;
        else if (is_punct(toks[i], "]")) --bdepth;
        if (pdepth || bdepth) continue;
        size_t op_len = 0;
        bool compound = false;
        if (is_assign_op(toks, i, hi, op_len, compound)) {
            ops.emplace_back(i, op_len);
            compounds.push_back(compound);
            i += op_len - 1;
        }
    }
    if (ops.empty()) {
        uses_from_expr(toks, lo, hi, out);
        return;
    }
    size_t seg_lo = lo;
    for (size_t k = 0; k < ops.size(); ++k) {
        auto [pos, len] = ops[k];
        DefUse lhs;
        lvalue_def(toks, seg_lo, pos, lhs);
        out.defs.insert(lhs.defs.begin(), lhs.defs.end());
        out.uses.insert(lhs.uses.begin(), lhs.uses.end());
        out.callees.insert(lhs.callees.begin(), lhs.callees.end());
        if (compounds[k]) out.uses.insert(lhs.defs.begin(), lhs.defs.end());
        seg_lo = pos + len;
    }
    uses_from_expr(toks, seg_lo, hi, out);
}

DefUse extract_tokens(const std::vector<Token>& toks, size_t lo, size_t hi) {
    DefUse out;
    while (hi > lo && (is_punct(toks[hi - 1], ";") || is_punct(toks[hi - 1], ":") ||
                       is_punct(toks[hi - 1], "{")))
        --hi;
    if (lo >= hi) return out;
    if (has_out_of_subset_syntax(toks, lo, hi)) {
        out.lexical_warning = true;
        return out;
    }
    const Token& first = toks[lo];
    if (is_punct(first, "@")) return out;
    if (first.kind == Token::Ident) {
        const std::string& head = first.text;
        if (head == "else" && lo + 1 < hi) return extract_tokens(toks, lo + 1, hi);
        if (head == "try") {
            if (lo + 1 < hi && is_punct(toks[lo + 1], "("))
                extract_declaration(toks, lo + 2, hi, out);  // try-with-resources
            return out;
        }
        if (head == "break" || head == "continue" || head == "package" || head == "import" ||
            head == "do" || head == "default" || head == "finally" || head == "class" ||
            head == "interface" || head == "enum")
            return out;
        if (head == "return" || head == "throw" || head == "assert" || head == "yield" ||
            head == "case") {
            uses_from_expr(toks, lo + 1, hi, out);
            return out;
        }
        if (head == "if" || head == "while" || head == "switch" || head == "synchronized") {
            uses_from_expr(toks, lo + 1, hi, out);
            return out;
        }
        if (head == "catch") {
            auto params = param_names(toks, lo + 1, hi);
            out.defs.insert(params.begin(), params.end());
            return out;
        }
        if (head == "for") {
            size_t open = lo + 1;
            if (open < hi && is_punct(toks[open], "(")) {
                size_t close = matching_close(toks, open, hi, "(", ")");
                bool enhanced = false;
                int depth = 0;
                for (size_t i = open + 1; i < close; ++i) {
                    if (is_punct(toks[i], "(") || is_punct(toks[i], "<")) ++depth;
                    else if (is_punct(toks[i], ")") || is_punct(toks[i], ">")) --depth;
                    else if (is_punct(toks[i], ":") && depth == 0) {
                        enhanced = true;
                        extract_declaration(toks, open + 1, i, out);
                        uses_from_expr(toks, i + 1, close, out);
                        break;
                    }
                }
                if (!enhanced) {
                    size_t part_lo = open + 1;
                    for (size_t i = open + 1; i <= close; ++i) {
                        if (i == close || is_punct(toks[i], ";")) {
                            if (part_lo < i) {
                                if (looks_like_declaration(toks, part_lo, i))
                                    extract_declaration(toks, part_lo, i, out);
                                else
                                    extract_general(toks, part_lo, i, out);
                            }
                            part_lo = i + 1;
                        }
                    }
                }
            }
            return out;
        }
    }
    if (looks_like_signature(toks, lo, hi, /*allow_bare_name=*/false)) {
        auto sig = parse_signature(toks, lo, hi);
        out.defs.insert(sig.params.begin(), sig.params.end());
        return out;
    }
    if (looks_like_declaration(toks, lo, hi)) {
        extract_declaration(toks, lo, hi, out);
        return out;
    }
    extract_general(toks, lo, hi, out);
    return out;
}

StmtKind classify(const std::vector<Token>& toks, size_t lo, size_t hi, const DefUse& du) {
    while (hi > lo && is_punct(toks[hi - 1], ";")) --hi;
    if (lo >= hi) return StmtKind::Other;
    const Token& first = toks[lo];
    if (first.kind == Token::Ident) {
        const std::string& head = first.text;
        if (head == "else" && lo + 1 < hi) return classify(toks, lo + 1, hi, du);
        if (head == "if" || head == "catch") return StmtKind::IfHeader;
        if (head == "for" || head == "while" || head == "do") return StmtKind::LoopHeader;
        if (head == "switch") return StmtKind::SwitchHeader;
        if (head == "case" || head == "default") return StmtKind::CaseLabel;
        if (head == "return") return StmtKind::Return;
        if (head == "try") return StmtKind::Declaration;
    }
    if (looks_like_signature(toks, lo, hi, false)) return StmtKind::Declaration;
    if (looks_like_declaration(toks, lo, hi)) return StmtKind::Declaration;
    int pdepth = 0;
    for (size_t i = lo; i < hi; ++i) {
        if (is_punct(toks[i], "(")) ++pdepth;
        else if (is_punct(toks[i], ")")) --pdepth;
        if (pdepth) continue;
        size_t op_len = 0;
        bool compound = false;
        if (is_assign_op(toks, i, hi, op_len, compound)) return StmtKind::Assignment;
        if (i + 1 < hi && toks[i].end == toks[i + 1].begin &&
            ((is_punct(toks[i], "+") && is_punct(toks[i + 1], "+")) ||
             (is_punct(toks[i], "-") && is_punct(toks[i + 1], "-"))))
            return StmtKind::Assignment;
    }
    if (!du.callees.empty()) return StmtKind::Call;
    return StmtKind::Other;
}

// ---------------------------------------------------------------------------
// segmentation
// ---------------------------------------------------------------------------

struct FileParse {
    std::vector<Statement> statements;
    std::vector<MethodUnit> methods;
};

struct Segmenter {
    const std::string& original;
    const std::string& stripped;  // comments blanked
    const std::vector<Token>& toks;
    std::string path;
    Diagnostics* diags;

    std::vector<size_t> line_starts;
    FileParse out;

    struct BlockCtx {
        enum Kind { File, Class, Method, Control, Switch, Try, DoBody, Plain } kind = File;
        int header_id = -1;
        bool else_arm = false;
        int method_index = -1;
        int first_stmt = -1;  // Try/DoBody bookkeeping
        int last_stmt = -1;
    };
    std::vector<BlockCtx> blocks;

    struct Pending {  // header awaiting `{` or a single braceless body statement
        int header_id;
        bool else_arm;
    };
    std::vector<Pending> pendings;

    std::vector<int> closed_ifs;  // `else` binding candidates, innermost first
    bool else_pending = false;
    int else_bound_if = -1;
    bool do_pending = false;
    bool try_pending = false;
    bool finally_pending = false;
    std::pair<int, int> last_try_range{-1, -1};
    std::pair<int, int> awaiting_do_while{-1, -1};
    int current_pseudo = -1;
    int seg_brace_depth = 0;  // braces inside an expression segment

    Segmenter(const std::string& orig, const std::string& strip, const std::vector<Token>& t,
              std::string_view p, Diagnostics* d)
        : original(orig), stripped(strip), toks(t), path(p), diags(d) {
        blocks.push_back({});
        line_starts.push_back(0);
        for (size_t i = 0; i < orig.size(); ++i)
            if (orig[i] == '\n') line_starts.push_back(i + 1);
    }

    int line_of(size_t offset) const {
        auto it = std::upper_bound(line_starts.begin(), line_starts.end(), offset);
        return static_cast<int>(it - line_starts.begin());
    }

    int enclosing_method() const {
        for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
            if (it->kind == BlockCtx::Method) return it->method_index;
        return -1;
    }

    int current_nesting() const {
        int n = 0;
        for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
            if (it->kind == BlockCtx::Method || it->kind == BlockCtx::Class ||
                it->kind == BlockCtx::File)
                break;
            if (it->kind == BlockCtx::Control || it->kind == BlockCtx::Switch ||
                it->kind == BlockCtx::DoBody)
                ++n;
        }
        return n + static_cast<int>(pendings.size());
    }

    std::pair<int, bool> current_parent() const {
        if (!pendings.empty()) return {pendings.back().header_id, pendings.back().else_arm};
        for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
            if (it->kind == BlockCtx::Method || it->kind == BlockCtx::Class ||
                it->kind == BlockCtx::File)
                break;
            if (it->kind == BlockCtx::Control || it->kind == BlockCtx::Switch)
                return {it->header_id, it->else_arm};
        }
        return {-1, false};
    }

    int method_for_new_stmt(int stmt_id) {
        int m = enclosing_method();
        if (m >= 0) return m;
        if (current_pseudo >= 0) return current_pseudo;
        MethodUnit unit;
        unit.name = "<file-scope>";
        unit.first_stmt = stmt_id;
        unit.last_stmt = stmt_id;
        unit.file = path;
        unit.synthetic = true;
        out.methods.push_back(std::move(unit));
        current_pseudo = static_cast<int>(out.methods.size()) - 1;
        return current_pseudo;
    }

    Statement make_statement(size_t tok_lo, size_t tok_hi, size_t end_offset) {
        Statement s;
        s.id = static_cast<int>(out.statements.size());
        size_t begin = toks[tok_lo].begin;
        size_t end = std::max(end_offset, toks[tok_hi - 1].end);
        auto trim = [](std::string v) {
            size_t a = v.find_first_not_of(" \t\r\n");
            size_t b = v.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
        };
        s.text = trim(original.substr(begin, end - begin));
        s.normalized = normalize_text(stripped.substr(begin, end - begin));
        DefUse du = extract_tokens(toks, tok_lo, tok_hi);
        s.lexical_warning = du.lexical_warning;
        s.kind = classify(toks, tok_lo, tok_hi, du);
        s.defs = std::move(du.defs);
        s.uses = std::move(du.uses);
        s.callees = std::move(du.callees);
        s.line_span = {line_of(begin), line_of(end > begin ? end - 1 : begin)};
        s.nesting = current_nesting();
        auto [parent, in_else] = current_parent();
        s.parent_header = parent;
        s.else_arm = in_else;
        return s;
    }

    int register_stmt(Statement s) {
        int id = s.id;
        s.method = method_for_new_stmt(id);
        out.methods[s.method].last_stmt = id;
        for (auto& b : blocks)
            if (b.kind == BlockCtx::Try || b.kind == BlockCtx::DoBody) {
                if (b.first_stmt < 0) b.first_stmt = id;
                b.last_stmt = id;
            }
        out.statements.push_back(std::move(s));
        return id;
    }

    // A construct at the current level completed (simple statement, closed
    // block, or do-while tail): braceless parents complete in cascade and
    // their if-headers become `else` binding candidates.
    void finish_unit(std::vector<int> candidates) {
        while (!pendings.empty()) {
            Pending p = pendings.back();
            pendings.pop_back();
            if (p.header_id >= 0 && out.statements[p.header_id].kind == StmtKind::IfHeader &&
                !p.else_arm)
                candidates.push_back(p.header_id);
        }
        closed_ifs = std::move(candidates);
    }
};

std::optional<FileParse> segment_file(std::string_view source, std::string_view path,
                                      Diagnostics* diags) {
    MaskedSource masked = mask_source(source);
    long paren = 0, brace = 0;
    bool negative = false;
    for (char c : masked.masked) {
        if (c == '(') ++paren;
        else if (c == ')') --paren;
        else if (c == '{') ++brace;
        else if (c == '}') --brace;
        if (paren < 0 || brace < 0) {
            negative = true;
            break;
        }
    }
    if (negative || paren != 0 || brace != 0) {
        diag(diags, "unbalanced source skipped: " + std::string(path));
        return std::nullopt;
    }

    std::string original(source);
    std::vector<Token> toks = tokenize(masked.masked);
    Segmenter seg(original, masked.no_comments, toks, path, diags);
    using BlockCtx = Segmenter::BlockCtx;

    size_t seg_lo = 0;
    bool seg_open = false;
    int paren_depth = 0;

    auto open_segment = [&](size_t i) {
        if (!seg_open) {
            seg_lo = i;
            seg_open = true;
        }
    };

    auto close_block = [&] {
        if (seg.blocks.size() <= 1) return;
        BlockCtx ctx = seg.blocks.back();
        seg.blocks.pop_back();
        switch (ctx.kind) {
            case BlockCtx::Control:
                if (ctx.header_id >= 0 &&
                    seg.out.statements[ctx.header_id].kind == StmtKind::IfHeader &&
                    !ctx.else_arm)
                    seg.finish_unit({ctx.header_id});
                else
                    seg.finish_unit({});
                break;
            case BlockCtx::Switch:
            case BlockCtx::Plain:
                seg.finish_unit({});
                break;
            case BlockCtx::Try:
                seg.last_try_range = {ctx.first_stmt, ctx.last_stmt};
                seg.finish_unit({});
                break;
            case BlockCtx::DoBody:
                seg.awaiting_do_while = {ctx.first_stmt, ctx.last_stmt};
                break;
            case BlockCtx::Method:
            case BlockCtx::Class:
                seg.current_pseudo = -1;
                seg.finish_unit({});
                seg.closed_ifs.clear();
                break;
            default:
                break;
        }
    };

    for (size_t i = 0; i < toks.size(); ++i) {
        const Token& t = toks[i];

        if (is_punct(t, "(")) {
            ++paren_depth;
            open_segment(i);
            continue;
        }
        if (is_punct(t, ")")) {
            --paren_depth;
            if (!(seg_open && paren_depth == 0 && seg.seg_brace_depth == 0)) continue;
            const Token& first = toks[seg_lo];
            bool else_prefixed = is_ident(first, "else");
            size_t head_pos = else_prefixed ? seg_lo + 1 : seg_lo;
            if (head_pos >= toks.size() || toks[head_pos].kind != Token::Ident) continue;
            const std::string& head = toks[head_pos].text;
            bool is_header = head == "if" || head == "for" || head == "while" ||
                             head == "switch" || head == "catch" || head == "synchronized" ||
                             head == "try";
            if (!is_header) continue;
            if (else_prefixed && head != "if") continue;

            if (head == "while" && seg.awaiting_do_while.first >= 0 && i + 1 < toks.size() &&
                is_punct(toks[i + 1], ";")) {
                // trailing header of do { ... } while (...);
                Statement s = seg.make_statement(seg_lo, i + 2, toks[i + 1].end);
                s.kind = StmtKind::LoopHeader;
                s.do_while = true;
                auto range = seg.awaiting_do_while;
                seg.awaiting_do_while = {-1, -1};
                int hdr_parent = s.parent_header;
                bool hdr_else = s.else_arm;
                int id = seg.register_stmt(std::move(s));
                for (int b = range.first; b >= 0 && b <= range.second; ++b) {
                    Statement& body = seg.out.statements[b];
                    if (body.parent_header == hdr_parent && body.else_arm == hdr_else) {
                        body.parent_header = id;
                        body.else_arm = false;
                    }
                }
                seg.finish_unit({});
                seg_open = false;
                ++i;  // consume ';'
                continue;
            }
            seg.awaiting_do_while = {-1, -1};

            if (head == "try") {  // try-with-resources
                Statement s = seg.make_statement(seg_lo, i + 1, t.end);
                s.kind = StmtKind::Declaration;
                seg.register_stmt(std::move(s));
                seg.try_pending = true;
                seg_open = false;
                continue;
            }

            int bound_if = -1;
            if (else_prefixed && !seg.closed_ifs.empty()) {
                bound_if = seg.closed_ifs.front();
                seg.closed_ifs.erase(seg.closed_ifs.begin());
            }
            Statement s = seg.make_statement(seg_lo, i + 1, t.end);
            if (head == "catch") {
                s.kind = StmtKind::IfHeader;
                s.try_range = seg.last_try_range;
            } else if (head == "synchronized") {
                s.kind = StmtKind::Other;
            }
            if (bound_if >= 0) {
                const Statement& bound = seg.out.statements[bound_if];
                s.parent_header = bound_if;
                s.else_arm = true;
                s.nesting = bound.nesting + 1;
            }
            int id = seg.register_stmt(std::move(s));
            seg.pendings.push_back({id, false});
            seg_open = false;
            continue;
        }

        if (paren_depth > 0) {
            open_segment(i);
            continue;
        }

        if (is_punct(t, "{")) {
            if (seg_open) {
                const Token& first = toks[seg_lo];
                bool expr_ctx = seg.seg_brace_depth > 0 || is_ident(first, "return") ||
                                is_ident(first, "throw") || is_ident(first, "assert") ||
                                is_ident(first, "yield");
                for (size_t j = seg_lo; j < i && !expr_ctx; ++j)
                    if (is_punct(toks[j], "=")) expr_ctx = true;
                if (expr_ctx) {
                    ++seg.seg_brace_depth;
                    continue;
                }
                seg.awaiting_do_while = {-1, -1};
                bool cls = false;
                for (size_t j = seg_lo; j < i; ++j)
                    if (is_ident(toks[j], "class") || is_ident(toks[j], "interface") ||
                        is_ident(toks[j], "enum")) {
                        cls = true;
                        break;
                    }
                if (cls) {
                    Statement s = seg.make_statement(seg_lo, i, toks[i - 1].end);
                    s.kind = StmtKind::Other;
                    seg.register_stmt(std::move(s));
                    seg.blocks.push_back({BlockCtx::Class});
                    seg.current_pseudo = -1;
                    seg_open = false;
                    continue;
                }
                bool at_class = seg.blocks.back().kind == BlockCtx::Class;
                bool at_top = seg.blocks.back().kind == BlockCtx::File;
                if ((at_class || at_top) && looks_like_signature(toks, seg_lo, i, at_class)) {
                    Statement s = seg.make_statement(seg_lo, i, toks[i - 1].end);
                    s.kind = StmtKind::Declaration;
                    auto sig = parse_signature(toks, seg_lo, i);
                    s.defs = std::set<std::string>(sig.params.begin(), sig.params.end());
                    s.uses.clear();
                    s.callees.clear();
                    s.parent_header = -1;
                    s.else_arm = false;
                    s.nesting = 0;
                    int sid = s.id;
                    MethodUnit unit;
                    unit.name = sig.name;
                    unit.params = sig.params;
                    unit.first_stmt = sid;
                    unit.last_stmt = sid;
                    unit.file = seg.path;
                    seg.out.methods.push_back(std::move(unit));
                    int midx = static_cast<int>(seg.out.methods.size()) - 1;
                    seg.current_pseudo = -1;
                    s.method = midx;
                    seg.out.statements.push_back(std::move(s));
                    BlockCtx ctx{BlockCtx::Method};
                    ctx.method_index = midx;
                    seg.blocks.push_back(ctx);
                    seg.closed_ifs.clear();
                    seg_open = false;
                    continue;
                }
                // unknown braced construct: keep the prefix, treat block as plain
                Statement s = seg.make_statement(seg_lo, i, toks[i - 1].end);
                seg.register_stmt(std::move(s));
                seg.blocks.push_back({BlockCtx::Plain});
                seg_open = false;
                continue;
            }
            // structural brace; the immediately preceding keyword binds first
            if (seg.else_pending) {
                BlockCtx ctx{BlockCtx::Control};
                ctx.header_id = seg.else_bound_if;
                ctx.else_arm = true;
                seg.blocks.push_back(ctx);
                seg.else_pending = false;
            } else if (seg.do_pending) {
                seg.blocks.push_back({BlockCtx::DoBody});
                seg.do_pending = false;
            } else if (seg.try_pending) {
                seg.blocks.push_back({BlockCtx::Try});
                seg.try_pending = false;
            } else if (seg.finally_pending) {
                seg.blocks.push_back({BlockCtx::Plain});
                seg.finally_pending = false;
            } else if (!seg.pendings.empty()) {
                Segmenter::Pending p = seg.pendings.back();
                seg.pendings.pop_back();
                StmtKind k = seg.out.statements[p.header_id].kind;
                BlockCtx ctx;
                ctx.kind = k == StmtKind::SwitchHeader ? BlockCtx::Switch
                           : k == StmtKind::Other      ? BlockCtx::Plain
                                                       : BlockCtx::Control;
                ctx.header_id = p.header_id;
                ctx.else_arm = p.else_arm;
                seg.blocks.push_back(ctx);
            } else {
                seg.blocks.push_back({BlockCtx::Plain});
            }
            continue;
        }

        if (is_punct(t, "}")) {
            if (seg.seg_brace_depth > 0) {
                --seg.seg_brace_depth;
                continue;
            }
            if (seg_open) {  // tolerate a missing terminator
                Statement s = seg.make_statement(seg_lo, i, toks[i - 1].end);
                seg.register_stmt(std::move(s));
                seg.finish_unit({});
                seg_open = false;
            }
            close_block();
            continue;
        }

        if (is_punct(t, ";")) {
            if (!seg_open) {
                if (!seg.pendings.empty()) seg.finish_unit({});  // empty body
                continue;
            }
            seg.awaiting_do_while = {-1, -1};
            Statement s = seg.make_statement(seg_lo, i + 1, t.end);
            seg.register_stmt(std::move(s));
            seg.finish_unit({});
            seg_open = false;
            continue;
        }

        if (is_punct(t, ":") && seg_open) {
            const Token& first = toks[seg_lo];
            bool case_label = is_ident(first, "case") || is_ident(first, "default");
            bool plain_label =
                i == seg_lo + 1 && first.kind == Token::Ident && !is_keyword(first.text);
            if (case_label || plain_label) {
                Statement s = seg.make_statement(seg_lo, i + 1, t.end);
                s.kind = case_label ? StmtKind::CaseLabel : StmtKind::Other;
                seg.register_stmt(std::move(s));
                seg_open = false;
            }
            continue;  // otherwise a ternary, part of the segment
        }

        if (t.kind == Token::Ident && !seg_open) {
            if (t.text == "else") {
                seg.awaiting_do_while = {-1, -1};
                if (i + 1 < toks.size() && is_ident(toks[i + 1], "if")) {
                    open_segment(i);  // `else if (...)` is one if-header
                    continue;
                }
                seg.else_bound_if = seg.closed_ifs.empty() ? -1 : seg.closed_ifs.front();
                if (!seg.closed_ifs.empty()) seg.closed_ifs.erase(seg.closed_ifs.begin());
                if (i + 1 < toks.size() && !is_punct(toks[i + 1], "{"))
                    seg.pendings.push_back({seg.else_bound_if, true});  // braceless else
                else
                    seg.else_pending = true;
                continue;
            }
            if (t.text == "do" && i + 1 < toks.size() && is_punct(toks[i + 1], "{")) {
                seg.awaiting_do_while = {-1, -1};
                seg.do_pending = true;
                continue;
            }
            if (t.text == "try" && !(i + 1 < toks.size() && is_punct(toks[i + 1], "("))) {
                seg.try_pending = true;
                continue;
            }
            if (t.text == "finally") {
                seg.finally_pending = true;
                continue;
            }
        }

        if (is_punct(t, "@") && !seg_open) {
            size_t j = i + 1;
            if (j < toks.size() && toks[j].kind == Token::Ident) {
                ++j;
                while (j + 1 < toks.size() && is_punct(toks[j], ".") &&
                       toks[j + 1].kind == Token::Ident)
                    j += 2;
                if (j < toks.size() && is_punct(toks[j], "("))
                    j = matching_close(toks, j, toks.size(), "(", ")") + 1;
                Statement s = seg.make_statement(i, j, toks[j - 1].end);
                s.kind = StmtKind::Other;
                s.defs.clear();
                s.uses.clear();
                s.callees.clear();
                seg.register_stmt(std::move(s));
                i = j - 1;
                continue;
            }
        }

        open_segment(i);
    }
    if (seg_open && !toks.empty()) {
        Statement s = seg.make_statement(seg_lo, toks.size(), toks.back().end);
        seg.register_stmt(std::move(s));
    }
    return std::move(seg.out);
}

// ---------------------------------------------------------------------------
// CFG construction
// ---------------------------------------------------------------------------

struct CfgBuilder {
    const std::vector<Statement>& stmts;
    ControlFlowGraph& cfg;
    Diagnostics* diags;
    std::unordered_map<int, const Statement*> by_id;

    struct Frame {
        int header;
        bool is_loop;  // false for switch: break target only
        std::string label;
        std::vector<int> breaks;
    };
    std::vector<Frame> frames;

    CfgBuilder(const std::vector<Statement>& s, ControlFlowGraph& g, Diagnostics* d)
        : stmts(s), cfg(g), diags(d) {
        for (const auto& st : stmts) by_id[st.id] = &st;
    }

    void edge(int from, int to) { cfg.edges.insert({from, to}); }
    const Statement& stmt(int id) const { return *by_id.at(id); }

    static std::vector<std::string> words_of(const Statement& s, size_t max_words) {
        std::vector<std::string> words;
        std::string cur;
        for (char c : s.normalized) {
            if (ident_char(c)) {
                cur.push_back(c);
            } else if (!cur.empty()) {
                words.push_back(cur);
                cur.clear();
                if (words.size() >= max_words) return words;
            }
        }
        if (!cur.empty()) words.push_back(cur);
        return words;
    }

    std::vector<int> children(int header, bool else_arm) const {
        std::vector<int> ids;
        for (const auto& s : stmts)
            if (s.parent_header == header && s.else_arm == else_arm && s.id != header)
                ids.push_back(s.id);
        return ids;
    }

    // A loop is labelled when the statement right before it reads `name:`.
    std::string label_of(int header_id) const {
        auto it = by_id.find(header_id - 1);
        if (it == by_id.end()) return {};
        const Statement& prev = *it->second;
        if (prev.kind != StmtKind::Other) return {};
        std::string n = prev.normalized;
        if (n.empty() || n.back() != ':') return {};
        n.pop_back();
        n = normalize_text(n);
        if (n.empty()) return {};
        for (char c : n)
            if (!ident_char(c)) return {};
        return n;
    }

    struct Wired {
        int entry = ControlFlowGraph::kExit;
        bool has_entry = false;
        std::vector<int> exits;
    };

    Wired wire_block(const std::vector<int>& ids) {
        Wired w;
        std::vector<int> prev;
        for (int id : ids) {
            Wired c = wire_construct(id);
            if (!w.has_entry) {
                w.entry = c.entry;
                w.has_entry = true;
            }
            for (int x : prev) edge(x, c.entry);
            prev = std::move(c.exits);
        }
        w.exits = std::move(prev);
        return w;
    }

    Wired wire_construct(int id) {
        const Statement& s = stmt(id);
        switch (s.kind) {
            case StmtKind::IfHeader: {
                Wired then_arm = wire_block(children(id, false));
                Wired else_arm = wire_block(children(id, true));
                Wired w;
                w.entry = id;
                w.has_entry = true;
                if (then_arm.has_entry) {
                    edge(id, then_arm.entry);
                    w.exits.insert(w.exits.end(), then_arm.exits.begin(), then_arm.exits.end());
                } else {
                    w.exits.push_back(id);
                }
                if (else_arm.has_entry) {
                    edge(id, else_arm.entry);
                    w.exits.insert(w.exits.end(), else_arm.exits.begin(), else_arm.exits.end());
                } else if (then_arm.has_entry) {
                    w.exits.push_back(id);  // false branch falls through
                }
                if (s.try_range.first >= 0)  // catch: reachable from every guarded stmt
                    for (int g = s.try_range.first; g <= s.try_range.second; ++g)
                        if (by_id.count(g) && g != id) edge(g, id);
                dedupe(w.exits);
                return w;
            }
            case StmtKind::LoopHeader: {
                frames.push_back({id, true, label_of(id), {}});
                Wired body = wire_block(children(id, false));
                Wired w;
                w.has_entry = true;
                w.entry = (s.do_while && body.has_entry) ? body.entry : id;
                if (body.has_entry) {
                    edge(id, body.entry);
                    for (int x : body.exits) edge(x, id);
                }
                w.exits.push_back(id);
                for (int b : frames.back().breaks) w.exits.push_back(b);
                frames.pop_back();
                dedupe(w.exits);
                return w;
            }
            case StmtKind::SwitchHeader: {
                frames.push_back({id, false, label_of(id), {}});
                std::vector<int> entries = children(id, false);
                Wired w;
                w.entry = id;
                w.has_entry = true;
                std::vector<int> prev;
                bool has_default = false;
                for (int cid : entries) {
                    Wired c = wire_construct(cid);
                    const Statement& cs = stmt(cid);
                    if (cs.kind == StmtKind::CaseLabel) {
                        edge(id, c.entry);
                        if (cs.normalized.rfind("default", 0) == 0) has_default = true;
                    }
                    for (int x : prev) edge(x, c.entry);
                    prev = std::move(c.exits);
                }
                w.exits = std::move(prev);
                if (!has_default || entries.empty()) w.exits.push_back(id);
                for (int b : frames.back().breaks) w.exits.push_back(b);
                frames.pop_back();
                dedupe(w.exits);
                return w;
            }
            case StmtKind::Return:
                edge(id, ControlFlowGraph::kExit);
                return {id, true, {}};
            default: {
                auto words = words_of(s, 2);
                const std::string head = words.empty() ? std::string() : words[0];
                const std::string arg = words.size() > 1 ? words[1] : std::string();
                if (head == "break") {
                    bool found = false;
                    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
                        if (!arg.empty() && it->label != arg) continue;
                        it->breaks.push_back(id);
                        found = true;
                        break;
                    }
                    if (!found) {
                        edge(id, ControlFlowGraph::kExit);
                        diag(diags, "unstructured jump: break " + arg + " at statement " +
                                        std::to_string(id));
                    }
                    return {id, true, {}};
                }
                if (head == "continue") {
                    bool found = false;
                    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
                        if (!it->is_loop) continue;
                        if (!arg.empty() && it->label != arg) continue;
                        edge(id, it->header);
                        found = true;
                        break;
                    }
                    if (!found) {
                        edge(id, ControlFlowGraph::kExit);
                        diag(diags, "unstructured jump: continue " + arg + " at statement " +
                                        std::to_string(id));
                    }
                    return {id, true, {}};
                }
                if (head == "throw") {
                    edge(id, ControlFlowGraph::kExit);
                    return {id, true, {}};
                }
                return {id, true, {id}};
            }
        }
    }

    static void dedupe(std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
};

}  // namespace

const char* to_string(StmtKind kind) {
    switch (kind) {
        case StmtKind::Declaration: return "declaration";
        case StmtKind::Assignment: return "assignment";
        case StmtKind::Call: return "call";
        case StmtKind::Return: return "return";
        case StmtKind::IfHeader: return "if-header";
        case StmtKind::LoopHeader: return "loop-header";
        case StmtKind::SwitchHeader: return "switch-header";
        case StmtKind::CaseLabel: return "case-label";
        case StmtKind::BlockClose: return "block-close";
        case StmtKind::Other: return "other";
    }
    return "other";
}

std::string normalize_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(c);
    }
    return out;
}

std::vector<int> ControlFlowGraph::successors(int node) const {
    std::vector<int> succ;
    for (const auto& [from, to] : edges)
        if (from == node) succ.push_back(to);
    return succ;
}

std::vector<int> ControlFlowGraph::predecessors(int node) const {
    std::vector<int> pred;
    for (const auto& [from, to] : edges)
        if (to == node) pred.push_back(from);
    return pred;
}

std::optional<std::vector<Statement>> segment_statements(std::string_view source_text,
                                                         std::string_view path,
                                                         Diagnostics* diags) {
    auto parsed = segment_file(source_text, path, diags);
    if (!parsed) return std::nullopt;
    return std::move(parsed->statements);
}

DefUse extract_def_use(std::string_view stmt_text) {
    MaskedSource masked = mask_source(stmt_text);
    std::vector<Token> toks = tokenize(masked.masked);
    return extract_tokens(toks, 0, toks.size());
}

ControlFlowGraph build_cfg(const MethodUnit& method, const std::vector<Statement>& statements,
                           Diagnostics* diags) {
    ControlFlowGraph cfg;
    cfg.method = method.name;
    for (const auto& s : statements) cfg.nodes.push_back(s.id);

    if (statements.empty()) {
        cfg.edges.insert({ControlFlowGraph::kEntry, ControlFlowGraph::kExit});
        return cfg;
    }

    CfgBuilder builder(statements, cfg, diags);
    std::vector<int> top;
    for (const auto& s : statements)
        if (s.parent_header < 0) top.push_back(s.id);
    CfgBuilder::Wired w = builder.wire_block(top);
    cfg.edges.insert({ControlFlowGraph::kEntry,
                      w.has_entry ? w.entry : ControlFlowGraph::kExit});
    for (int x : w.exits) cfg.edges.insert({x, ControlFlowGraph::kExit});

    // keep dead code attached: link each unreachable node from its textual
    // predecessor, ascending, so the predecessor is already reachable
    std::unordered_map<int, std::vector<int>> succ;
    for (const auto& [from, to] : cfg.edges) succ[from].push_back(to);
    std::set<int> reach;
    std::vector<int> work{ControlFlowGraph::kEntry};
    reach.insert(ControlFlowGraph::kEntry);
    while (!work.empty()) {
        int n = work.back();
        work.pop_back();
        for (int to : succ[n])
            if (reach.insert(to).second) work.push_back(to);
    }
    for (const auto& s : statements) {
        if (reach.count(s.id)) continue;
        int from = builder.by_id.count(s.id - 1) ? s.id - 1 : ControlFlowGraph::kEntry;
        cfg.edges.insert({from, s.id});
        // everything reachable from s becomes reachable as well
        std::vector<int> stack{s.id};
        reach.insert(s.id);
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            auto it = succ.find(n);
            if (it == succ.end()) continue;
            for (int to : it->second)
                if (reach.insert(to).second) stack.push_back(to);
        }
    }
    return cfg;
}

SourceVersion parse_version(VersionLabel label,
                            const std::vector<std::pair<std::string, std::string>>& files,
                            Diagnostics* diags) {
    SourceVersion version;
    version.label = label;
    version.files = files;
    for (const auto& [path, text] : files) {
        auto parsed = segment_file(text, path, diags);
        FileRange range{path, static_cast<int>(version.statements.size()),
                        static_cast<int>(version.statements.size()) - 1};
        if (parsed) {
            int id_base = static_cast<int>(version.statements.size());
            int method_base = static_cast<int>(version.methods.size());
            for (Statement s : parsed->statements) {
                s.id += id_base;
                if (s.parent_header >= 0) s.parent_header += id_base;
                if (s.try_range.first >= 0) {
                    s.try_range.first += id_base;
                    s.try_range.second += id_base;
                }
                s.method += method_base;
                version.statements.push_back(std::move(s));
            }
            for (MethodUnit m : parsed->methods) {
                m.first_stmt += id_base;
                m.last_stmt += id_base;
                version.methods.push_back(std::move(m));
            }
            range.last_stmt = static_cast<int>(version.statements.size()) - 1;
        }
        version.file_ranges.push_back(std::move(range));
    }
    return version;
}

std::vector<Statement> method_statements(const SourceVersion& version, const MethodUnit& method) {
    std::vector<Statement> result;
    for (int id = method.first_stmt; id <= method.last_stmt; ++id)
        result.push_back(version.statements[id]);
    return result;
}

}  // namespace changectx
