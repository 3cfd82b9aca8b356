#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "changectx/stmt_parser.hpp"

using namespace changectx;

namespace {

std::vector<Statement> segment(const std::string& src) {
    auto stmts = segment_statements(src, "Test.java");
    REQUIRE(stmts.has_value());
    return *stmts;
}

std::set<std::string> names(std::initializer_list<const char*> list) {
    return std::set<std::string>(list.begin(), list.end());
}

bool has_edge(const ControlFlowGraph& cfg, int from, int to) {
    return cfg.edges.count({from, to}) > 0;
}

ControlFlowGraph cfg_of(const std::string& body) {
    SourceVersion v = parse_version(VersionLabel::Before, {{"Test.java", body}});
    REQUIRE(v.methods.size() >= 1);
    const MethodUnit& m = v.methods[0];
    return build_cfg(m, method_statements(v, m));
}

}  // namespace

TEST_CASE("single declaration statement") {
    auto stmts = segment("int lineCount = getLineCount();");
    REQUIRE(stmts.size() == 1);
    CHECK(stmts[0].kind == StmtKind::Declaration);
    CHECK(stmts[0].defs == names({"lineCount"}));
    CHECK(stmts[0].uses.empty());
    CHECK(stmts[0].callees == names({"getLineCount"}));
}

TEST_CASE("empty text yields no statements") {
    CHECK(segment("").empty());
    CHECK(segment("   \n\t\n").empty());
    CHECK(segment("// only a comment\n/* and another */").empty());
}

TEST_CASE("if with braced body: two statements, nesting 0 and 1") {
    auto stmts = segment("if (a > 0) {\n  b = a;\n}\n");
    REQUIRE(stmts.size() == 2);
    CHECK(stmts[0].kind == StmtKind::IfHeader);
    CHECK(stmts[0].uses == names({"a"}));
    CHECK(stmts[0].nesting == 0);
    CHECK(stmts[1].kind == StmtKind::Assignment);
    CHECK(stmts[1].defs == names({"b"}));
    CHECK(stmts[1].uses == names({"a"}));
    CHECK(stmts[1].nesting == 1);
    CHECK(stmts[1].parent_header == 0);
}

TEST_CASE("ids are dense and in source order") {
    auto stmts = segment("int a = 1;\nint b = 2;\nif (a > b) {\n  a = b;\n}\n");
    for (size_t i = 0; i < stmts.size(); ++i) CHECK(stmts[i].id == static_cast<int>(i));
    for (size_t i = 1; i < stmts.size(); ++i)
        CHECK(stmts[i - 1].line_span.first <= stmts[i].line_span.first);
}

TEST_CASE("segmentation is deterministic") {
    std::string src =
        "class A {\n  void m(int x) {\n    if (x > 0) { x = x - 1; }\n    return;\n  }\n}\n";
    auto a = segment(src);
    auto b = segment(src);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].text == b[i].text);
        CHECK(a[i].normalized == b[i].normalized);
        CHECK(a[i].kind == b[i].kind);
        CHECK(a[i].defs == b[i].defs);
        CHECK(a[i].uses == b[i].uses);
    }
}

TEST_CASE("unbalanced source is rejected with a diagnostic") {
    Diagnostics diags;
    auto stmts = segment_statements("void m() { if (a > 0 { }", "Bad.java", &diags);
    CHECK(!stmts.has_value());
    CHECK(diags.size() == 1);
}

TEST_CASE("normalization is idempotent through re-parsing") {
    std::string src =
        "int   x =  1 ;\nif (x  >  0) {\n  x = x /* inline */ + 2;\n}\nfoo( x ,  2 );\n";
    auto stmts = segment(src);
    for (const auto& s : stmts) {
        auto reparsed = segment_statements(s.normalized, "Re.java");
        REQUIRE(reparsed.has_value());
        REQUIRE(!reparsed->empty());
        CHECK((*reparsed)[0].normalized == s.normalized);
    }
}

TEST_CASE("line coverage: every code line is covered by exactly one statement") {
    std::string src =
        "class Widget {\n"               // 1
        "  private int count;\n"          // 2
        "  void update(int delta) {\n"    // 3
        "    int next = count + delta;\n" // 4
        "    if (next > 0) {\n"           // 5
        "      count = next;\n"           // 6
        "    } else {\n"                  // 7 (structural)
        "      count = 0;\n"              // 8
        "    }\n"                         // 9
        "    while (count > 10) {\n"      // 10
        "      count--;\n"                // 11
        "    }\n"                         // 12
        "    return;\n"                   // 13
        "  }\n"                           // 14
        "}\n";                            // 15
    auto stmts = segment(src);
    std::set<int> structural = {7, 9, 12, 14, 15};  // brace/else lines
    for (int line = 1; line <= 15; ++line) {
        if (structural.count(line)) continue;
        int covering = 0;
        for (const auto& s : stmts)
            if (s.line_span.first <= line && line <= s.line_span.second) ++covering;
        CHECK_MESSAGE(covering == 1, "line ", line, " covered by ", covering, " statements");
    }
}

TEST_CASE("def/use extraction: compound assignment") {
    auto du = extract_def_use("x += y * 2;");
    CHECK(du.defs == names({"x"}));
    CHECK(du.uses == names({"x", "y"}));
    CHECK(du.callees.empty());
}

TEST_CASE("def/use extraction: null check header") {
    auto du = extract_def_use("if (mTextState != null)");
    CHECK(du.defs.empty());
    CHECK(du.uses == names({"mTextState"}));
    CHECK(du.callees.empty());
}

TEST_CASE("def/use extraction: receiver call") {
    auto du = extract_def_use("sb.append(name);");
    CHECK(du.defs.empty());
    CHECK(du.uses == names({"sb", "name"}));
    CHECK(du.callees == names({"append"}));
}

TEST_CASE("def/use extraction: assorted forms") {
    SUBCASE("plain assignment") {
        auto du = extract_def_use("x = foo(a) + b.c;");
        CHECK(du.defs == names({"x"}));
        CHECK(du.uses == names({"a", "b"}));
        CHECK(du.callees == names({"foo"}));
    }
    SUBCASE("array write") {
        auto du = extract_def_use("a[i] = x;");
        CHECK(du.defs == names({"a"}));
        CHECK(du.uses == names({"i", "x"}));
    }
    SUBCASE("increment") {
        auto du = extract_def_use("i++;");
        CHECK(du.defs == names({"i"}));
        CHECK(du.uses == names({"i"}));
    }
    SUBCASE("this field write") {
        auto du = extract_def_use("this.total = total + 1;");
        CHECK(du.defs == names({"total"}));
        CHECK(du.uses == names({"total"}));
    }
    SUBCASE("for header") {
        auto du = extract_def_use("for (int i = 0; i < n; i++)");
        CHECK(du.defs == names({"i"}));
        CHECK(du.uses == names({"i", "n"}));
    }
    SUBCASE("enhanced for header") {
        auto du = extract_def_use("for (String s : items)");
        CHECK(du.defs == names({"s"}));
        CHECK(du.uses == names({"items"}));
    }
    SUBCASE("return expression") {
        auto du = extract_def_use("return a + b;");
        CHECK(du.uses == names({"a", "b"}));
    }
    SUBCASE("declaration with two declarators") {
        auto du = extract_def_use("int a = x, b = y;");
        CHECK(du.defs == names({"a", "b"}));
        CHECK(du.uses == names({"x", "y"}));
    }
    SUBCASE("string contents are masked") {
        auto du = extract_def_use("log(\"count = \" + count);");
        CHECK(du.uses == names({"count"}));
        CHECK(du.callees == names({"log"}));
    }
    SUBCASE("comparison is not an assignment") {
        auto du = extract_def_use("if (a <= b)");
        CHECK(du.defs.empty());
        CHECK(du.uses == names({"a", "b"}));
    }
    SUBCASE("lambda is out of subset") {
        auto du = extract_def_use("foo(x -> x + 1);");
        CHECK(du.lexical_warning);
        CHECK(du.defs.empty());
        CHECK(du.uses.empty());
    }
}

TEST_CASE("method discovery with parameters") {
    SourceVersion v = parse_version(
        VersionLabel::Before,
        {{"A.java",
          "class A {\n  int add(int a, int b) {\n    return a + b;\n  }\n  void run() {\n    "
          "add(1, 2);\n  }\n}\n"}});
    REQUIRE(v.methods.size() >= 3);  // file scope (class line) + add + run
    const MethodUnit* add = nullptr;
    const MethodUnit* run = nullptr;
    for (const auto& m : v.methods) {
        if (m.name == "add") add = &m;
        if (m.name == "run") run = &m;
    }
    REQUIRE(add != nullptr);
    REQUIRE(run != nullptr);
    CHECK(add->params == std::vector<std::string>{"a", "b"});
    CHECK(v.statements[add->first_stmt].defs == names({"a", "b"}));
    CHECK(v.statements[add->first_stmt].kind == StmtKind::Declaration);
    // ranges disjoint and every statement owned by exactly one method
    for (const auto& s : v.statements) {
        int owners = 0;
        for (const auto& m : v.methods)
            if (s.id >= m.first_stmt && s.id <= m.last_stmt) ++owners;
        CHECK(owners == 1);
        CHECK(s.method >= 0);
    }
}

TEST_CASE("cfg: single return") {
    ControlFlowGraph cfg = cfg_of("void m() {\n  return;\n}\n");
    // statement 0 is the signature, 1 the return
    CHECK(has_edge(cfg, ControlFlowGraph::kEntry, 0));
    CHECK(has_edge(cfg, 0, 1));
    CHECK(has_edge(cfg, 1, ControlFlowGraph::kExit));
    for (const auto& [from, to] : cfg.edges) {
        CHECK(from != ControlFlowGraph::kExit);
        CHECK(to != ControlFlowGraph::kEntry);
    }
}

TEST_CASE("cfg: if/else joins") {
    // ids: 0 sig, 1 if, 2 a, 3 b (else), 4 d
    ControlFlowGraph cfg =
        cfg_of("void m() {\n  if (c) {\n    a();\n  } else {\n    b();\n  }\n  d();\n}\n");
    CHECK(has_edge(cfg, 1, 2));
    CHECK(has_edge(cfg, 1, 3));
    CHECK(has_edge(cfg, 2, 4));
    CHECK(has_edge(cfg, 3, 4));
    CHECK(!has_edge(cfg, 2, 3));  // no edge across arms
    CHECK(!has_edge(cfg, 1, 4));  // both arms present, no fall-through
}

TEST_CASE("cfg: while loop back edge and exit") {
    // ids: 0 sig, 1 while, 2 a, 3 b
    ControlFlowGraph cfg = cfg_of("void m() {\n  while (c) {\n    a();\n  }\n  b();\n}\n");
    CHECK(has_edge(cfg, 1, 2));
    CHECK(has_edge(cfg, 2, 1));
    CHECK(has_edge(cfg, 1, 3));
    CHECK(!has_edge(cfg, 2, 3));
}

TEST_CASE("cfg: braceless bodies and else-if chain") {
    // ids: 0 sig, 1 if, 2 x=1, 3 else-if, 4 y=1, 5 z=1 (else), 6 end
    ControlFlowGraph cfg = cfg_of(
        "void m() {\n  if (a)\n    x = 1;\n  else if (b)\n    y = 1;\n  else\n    z = 1;\n  "
        "end();\n}\n");
    CHECK(has_edge(cfg, 1, 2));
    CHECK(has_edge(cfg, 1, 3));
    CHECK(has_edge(cfg, 3, 4));
    CHECK(has_edge(cfg, 3, 5));
    CHECK(has_edge(cfg, 2, 6));
    CHECK(has_edge(cfg, 4, 6));
    CHECK(has_edge(cfg, 5, 6));
    CHECK(!has_edge(cfg, 1, 6));  // if has a full else chain
}

TEST_CASE("cfg: break and continue") {
    // 0 sig, 1 while, 2 if, 3 break, 4 if2, 5 continue, 6 w, 7 after
    ControlFlowGraph cfg = cfg_of(
        "void m() {\n  while (c) {\n    if (a) {\n      break;\n    }\n    if (b) {\n      "
        "continue;\n    }\n    w();\n  }\n  after();\n}\n");
    CHECK(has_edge(cfg, 3, 7));  // break to after-loop
    CHECK(has_edge(cfg, 5, 1));  // continue to header
    CHECK(has_edge(cfg, 6, 1));  // body end back edge
    CHECK(has_edge(cfg, 1, 7));  // loop exit
    CHECK(!has_edge(cfg, 3, ControlFlowGraph::kExit));
}

TEST_CASE("cfg: do-while runs body first") {
    // 0 sig, 1 a, 2 while-tail, 3 b
    ControlFlowGraph cfg = cfg_of("void m() {\n  do {\n    a();\n  } while (c);\n  b();\n}\n");
    CHECK(has_edge(cfg, 0, 1));  // body entered directly
    CHECK(has_edge(cfg, 1, 2));
    CHECK(has_edge(cfg, 2, 1));  // back edge
    CHECK(has_edge(cfg, 2, 3));
}

TEST_CASE("cfg: switch branches to case labels") {
    // 0 sig, 1 switch, 2 case 1, 3 a, 4 break, 5 case 2, 6 b, 7 after
    ControlFlowGraph cfg = cfg_of(
        "void m() {\n  switch (x) {\n    case 1:\n      a();\n      break;\n    case 2:\n      "
        "b();\n  }\n  after();\n}\n");
    CHECK(has_edge(cfg, 1, 2));
    CHECK(has_edge(cfg, 1, 5));
    CHECK(has_edge(cfg, 2, 3));
    CHECK(has_edge(cfg, 4, 7));  // break exits the switch
    CHECK(has_edge(cfg, 3, 4));
    CHECK(has_edge(cfg, 5, 6));
    CHECK(has_edge(cfg, 1, 7));  // no default: switch may fall through
    CHECK(has_edge(cfg, 6, 7));
}

TEST_CASE("cfg: catch header reachable from every try statement") {
    // 0 sig, 1 a, 2 b, 3 catch, 4 handle, 5 after
    ControlFlowGraph cfg = cfg_of(
        "void m() {\n  try {\n    a();\n    b();\n  } catch (Exception e) {\n    handle();\n  "
        "}\n  after();\n}\n");
    CHECK(has_edge(cfg, 1, 3));
    CHECK(has_edge(cfg, 2, 3));
    CHECK(has_edge(cfg, 3, 4));
    CHECK(has_edge(cfg, 3, 5));  // no exception path
    CHECK(has_edge(cfg, 4, 5));
}

TEST_CASE("cfg: labelled break to unknown label goes to exit with diagnostic") {
    SourceVersion v = parse_version(
        VersionLabel::Before,
        {{"T.java", "void m() {\n  while (c) {\n    break missing;\n  }\n  after();\n}\n"}});
    Diagnostics diags;
    const MethodUnit& m = v.methods[0];
    ControlFlowGraph cfg = build_cfg(m, method_statements(v, m), &diags);
    CHECK(has_edge(cfg, 2, ControlFlowGraph::kExit));
    CHECK(!diags.empty());
}

TEST_CASE("cfg: all nodes reachable from entry, exit/entry degree invariants") {
    std::vector<std::string> sources = {
        "void m() {\n  a();\n  return;\n  dead();\n}\n",
        "void m() {\n  if (a) {\n    return;\n  }\n  b();\n}\n",
        "void m() {\n  while (true) {\n    a();\n  }\n  b();\n}\n",
        "void m() {\n}\n",
    };
    for (const auto& src : sources) {
        ControlFlowGraph cfg = cfg_of(src);
        std::set<int> reach{ControlFlowGraph::kEntry};
        std::vector<int> work{ControlFlowGraph::kEntry};
        while (!work.empty()) {
            int n = work.back();
            work.pop_back();
            for (const auto& [from, to] : cfg.edges)
                if (from == n && reach.insert(to).second) work.push_back(to);
        }
        for (int n : cfg.nodes) CHECK(reach.count(n) == 1);
        for (const auto& [from, to] : cfg.edges) {
            CHECK(from != ControlFlowGraph::kExit);
            CHECK(to != ControlFlowGraph::kEntry);
        }
    }
}

TEST_CASE("nesting counts control constructs only") {
    auto stmts = segment(
        "void m() {\n  a();\n  if (c) {\n    while (d) {\n      b();\n    }\n  }\n}\n");
    // 0 sig, 1 a, 2 if, 3 while, 4 b
    CHECK(stmts[1].nesting == 0);
    CHECK(stmts[2].nesting == 0);
    CHECK(stmts[3].nesting == 1);
    CHECK(stmts[4].nesting == 2);
}

TEST_CASE("case labels and annotations segment as statements") {
    auto stmts = segment(
        "@Override\nvoid m(int x) {\n  switch (x) {\n    case 1:\n      a();\n    default:\n   "
        "   b();\n  }\n}\n");
    REQUIRE(stmts.size() == 7);
    CHECK(stmts[0].kind == StmtKind::Other);  // annotation
    CHECK(stmts[2].kind == StmtKind::SwitchHeader);
    CHECK(stmts[3].kind == StmtKind::CaseLabel);
    CHECK(stmts[5].kind == StmtKind::CaseLabel);
    CHECK(stmts[3].nesting == 1);
}
