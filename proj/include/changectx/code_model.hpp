#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace changectx {

/// Classification of a segmented statement.
enum class StmtKind {
    Declaration,
    Assignment,
    Call,
    Return,
    IfHeader,
    LoopHeader,
    SwitchHeader,
    CaseLabel,
    BlockClose,
    Other,
};

const char* to_string(StmtKind kind);

/// One parsed source statement. Immutable after construction.
///
/// Ids are dense 0..N-1 within a SourceVersion, in textual order.
/// `nesting` counts enclosing control constructs; a statement directly
/// inside a method body is at nesting 0.
struct Statement {
    int id = -1;
    std::string text;        // raw source slice, trimmed
    std::string normalized;  // comments stripped, whitespace collapsed
    StmtKind kind = StmtKind::Other;
    std::set<std::string> defs;
    std::set<std::string> uses;
    std::set<std::string> callees;
    int method = -1;  // index into SourceVersion::methods
    int nesting = 0;
    std::pair<int, int> line_span{0, 0};  // 1-based, inclusive

    // Structural byproducts of segmentation, consumed by the CFG builder.
    int parent_header = -1;  // innermost enclosing control header id, -1 at body level
    bool else_arm = false;   // lies in the else arm of parent_header
    bool do_while = false;   // loop header written after its body (do { } while)
    std::pair<int, int> try_range{-1, -1};  // catch headers: guarded statement id range
    bool lexical_warning = false;  // def/use extraction saw out-of-subset syntax
};

/// A method (or a contiguous file-scope run of statements, when synthetic).
struct MethodUnit {
    std::string name;
    std::vector<std::string> params;
    int first_stmt = 0;  // id of the signature statement (or first run statement)
    int last_stmt = -1;  // inclusive
    std::string file;
    bool synthetic = false;
};

enum class VersionLabel { Before, After };

struct FileRange {
    std::string path;
    int first_stmt = 0;
    int last_stmt = -1;  // inclusive; first > last means the file parsed empty
};

/// One side of a commit: all files of that version, parsed.
struct SourceVersion {
    VersionLabel label = VersionLabel::Before;
    std::vector<std::pair<std::string, std::string>> files;  // (path, text)
    std::vector<Statement> statements;
    std::vector<MethodUnit> methods;
    std::vector<FileRange> file_ranges;
};

/// Collapse whitespace runs to single spaces and trim. Idempotent.
std::string normalize_text(std::string_view text);

}  // namespace changectx
