#include <gtest/gtest.h>

#include <fstream>
#include <iterator>

#include "singeq/workspace.hpp"

namespace singeq::testing {
namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(SINGEQ_TEST_DATA) + "/" + name);
  return {std::istreambuf_iterator<char>(in), {}};
}

const char* kA2 =
    "FIELD p=32003\n"
    "QUIVER A2\n"
    "  VERTICES 1\n"
    "  ARROW x: 1 -> 1\n"
    "  REL x^2\n";

// k<x, y>/(x^2, y^2, xy - q yx) with q = 1/2
const char* kQuantumPlane =
    "FIELD rational\n"
    "QUIVER Q\n"
    "  VERTICES v\n"
    "  ARROW x: v -> v\n"
    "  ARROW y: v -> v\n"
    "  REL x*x\n"
    "  REL y^2\n"
    "  REL x*y - 2/4 y*x\n"
    "ELEMENT u OVER Q = ev - 1/3 x*y\n"
    "MODULE R = REGULAR Q\n"
    "TASK pd R SEED 7\n";

const char* kRaw =
    "ALGEBRA D\n"
    "  LABELS e x\n"
    "  VERTICES 1\n"
    "  IDEMPOTENT 1 = e\n"
    "  MUL e e = e\n"
    "  MUL e x = x\n"
    "  MUL x e = x\n"
    "MODULE M OVER D\n"
    "  DIM 2\n"
    "  ACTION x = 0 0; 1 0\n"
    "BIMODULE B OVER D D\n"
    "  DIM 2\n"
    "  LEFT x = 0 0; 1 0\n"
    "  RIGHT x = 0 0; 1 0\n"
    "WITNESS w OVER D D PAIR B B LEVEL 0\n"
    "TASK check-algebra D\n"
    "TASK pd M\n"
    "TASK verify-witness w\n";

Declared find(const Workspace& w, const std::string& name) {
  for (const auto& d : declarations(w))
    if (d.name == name) return d;
  ADD_FAILURE() << name << " not declared";
  return {};
}

TEST(Workspace, MinimalQuiverFixture) {
  auto w = parse_workspace(kA2);
  auto ds = declarations(w);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].name, "A2");
  EXPECT_EQ(ds[0].kind, "algebra");
  EXPECT_EQ(ds[0].dim, 2);
  EXPECT_EQ(w.field(), FieldSpec::prime(32003));
}

TEST(Workspace, ForwardReferenceIsParseErrorAtTheLine) {
  try {
    parse_workspace("FIELD prime 5\nMODULE S = SIMPLE A2 1\nQUIVER A2\n  VERTICES 1\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 19);
  }
  EXPECT_THROW(parse_workspace(std::string(kA2) + "TASK verify-witness w\nWITNESS w OVER A2 A2 PAIR R R LEVEL 0\n"),
               ParseError);
  // a task result is not visible to declarations
  EXPECT_THROW(parse_workspace(std::string(kA2) +
                               "MODULE S = SIMPLE A2 1\nTASK syzygy S 1 AS T\nMODULE U = SYZYGY T 1\n"),
               ParseError);
}

TEST(Workspace, LengthOneRelationIsNotAdmissible) {
  EXPECT_THROW(parse_workspace("QUIVER A\n  VERTICES 1\n  ARROW x: 1 -> 1\n  REL x\n"), ValidationError);
  EXPECT_THROW(parse_workspace("QUIVER A\n  VERTICES 1\n  ARROW x: 1 -> 1\n  REL x*x - x\n"), ValidationError);
  try {
    parse_workspace("QUIVER A\n  VERTICES 1\n  ARROW x: 1 -> 1\n  REL x\n");
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("not admissible"), std::string::npos) << e.what();
  }
}

TEST(Workspace, SyntaxErrors) {
  EXPECT_THROW(parse_workspace("QUIVER A\n  ARROW x: 1 -> 1\n"), ParseError);  // undeclared vertex
  EXPECT_THROW(parse_workspace("  VERTICES 1\n"), ParseError);
  EXPECT_THROW(parse_workspace("BOGUS x\n"), ParseError);
  EXPECT_THROW(parse_workspace(std::string(kA2) + "FIELD prime 7\n"), ParseError);
  EXPECT_THROW(parse_workspace(std::string(kA2) + "ELEMENT u OVER A2 = 1/2 x\n"), ParseError);
  EXPECT_THROW(parse_workspace(std::string(kA2) + "ELEMENT u OVER A2 = x $\n"), ParseError);
  EXPECT_THROW(parse_workspace(std::string(kA2) + "MODULE M OVER A2\n  DIM 2\n  ACTION x = 0 0; 1\n"), ParseError);
  EXPECT_THROW(parse_workspace(std::string(kA2) + "TASK frobnicate A2\n"), ParseError);
  EXPECT_THROW(parse_workspace(std::string(kA2) + "TASK pd A2\n"), ParseError);  // wrong kind
  EXPECT_THROW(parse_workspace(std::string(kA2) + "TASK vdim A2 AS v\n"), ParseError);
  EXPECT_THROW(parse_workspace(std::string(kA2) + "QUIVER A2\n  VERTICES 1\n"), ParseError);
  EXPECT_THROW(parse_workspace("FIELD prime 6\n"), ParseError);
}

TEST(Workspace, InvalidObjectsAreValidationErrors) {
  // (a a) a = b a = b but a (a a) = a b = 0
  EXPECT_THROW(parse_workspace("ALGEBRA N\n  LABELS e a b\n  VERTICES 1\n  IDEMPOTENT 1 = e\n"
                               "  MUL e e = e\n  MUL e a = a\n  MUL a e = a\n  MUL e b = b\n  MUL b e = b\n"
                               "  MUL a a = b\n  MUL b a = b\n"),
               ValidationError);
  // x acting by the identity is not nilpotent
  EXPECT_THROW(parse_workspace(std::string(kA2) + "MODULE M OVER A2\n  DIM 1\n  ACTION x = 1\n"), ValidationError);
  EXPECT_THROW(parse_workspace(std::string(kA2) + "ALGEBRA k = FIELD\nHOM f : A2 -> k = 1 1\n"), ValidationError);
}

TEST(Workspace, RawStructureMatchesQuiver) {
  auto w = parse_workspace(kRaw);
  EXPECT_EQ(find(w, "D").dim, 2);
  auto rs = run_all(w);
  ASSERT_EQ(rs.size(), 3u);
  for (const auto& r : rs) EXPECT_EQ(r.status, Status::Pass) << r.text();
  EXPECT_EQ(rs[1].level, 0);  // M is the regular module
  EXPECT_EQ(rs[2].level, 0);
}

TEST(Workspace, RoundTrip) {
  for (const std::string text : {std::string(kA2), std::string(kQuantumPlane), std::string(kRaw),
                                 read_data("basic.ws"), read_data("passing.ws")}) {
    auto w = parse_workspace(text);
    const std::string s = serialize(w);
    auto again = parse_workspace(s);
    EXPECT_TRUE(again == w) << s;
    EXPECT_EQ(serialize(again), s);
    auto da = declarations(w), db = declarations(again);
    ASSERT_EQ(da.size(), db.size());
    for (std::size_t i = 0; i < da.size(); ++i) {
      EXPECT_EQ(da[i].name, db[i].name);
      EXPECT_EQ(da[i].dim, db[i].dim);
    }
    EXPECT_EQ(w.tasks().size(), again.tasks().size());
  }
}

TEST(Workspace, NormalForm) {
  auto w = parse_workspace(kQuantumPlane);
  const std::string s = serialize(w);
  EXPECT_NE(s.find("REL y * y"), std::string::npos) << s;
  EXPECT_NE(s.find("1/2"), std::string::npos) << s;
  EXPECT_EQ(s.find("2/4"), std::string::npos) << s;
  EXPECT_EQ(find(w, "Q").dim, 4);
  EXPECT_FALSE(parse_workspace(std::string(kA2) + "TASK vdim A2\n") == parse_workspace(kA2));
}

TEST(Workspace, FieldOverride) {
  auto w = parse_workspace(read_data("passing.ws"), FieldSpec::rational());
  EXPECT_EQ(w.field(), FieldSpec::rational());
  EXPECT_EQ(w.declared_field(), FieldSpec::prime(32003));
  auto p = parse_workspace(read_data("passing.ws"));
  auto q = p.with_field(FieldSpec::prime(7));
  EXPECT_TRUE(p == q);
  auto rr = run_all(w), rq = run_all(q);
  ASSERT_EQ(rr.size(), rq.size());
  for (std::size_t i = 0; i < rr.size(); ++i) {
    EXPECT_EQ(rr[i].status, Status::Pass) << rr[i].text();
    EXPECT_EQ(rq[i].status, Status::Pass) << rq[i].text();
    EXPECT_EQ(rr[i].level, rq[i].level);
  }
  EXPECT_EQ(parse_field("7"), FieldSpec::prime(7));
  EXPECT_EQ(parse_field("p=11"), FieldSpec::prime(11));
  EXPECT_EQ(parse_field("rational"), FieldSpec::rational());
  EXPECT_THROW(parse_field("prime 8"), ParseError);
}

const char* kTasks =
    "QUIVER A2\n"
    "  VERTICES 1\n"
    "  ARROW x: 1 -> 1\n"
    "  REL x^2\n"
    "ALGEBRA k = FIELD\n"
    "ALGEBRA L = PRODUCT A2 k\n"
    "ELEMENT e OVER L = a.e1\n"
    "BIMODULE R = REGULAR A2\n"
    "WITNESS id OVER A2 A2 PAIR R R LEVEL 0\n"
    "MODULE S = SIMPLE A2 1\n"
    "COMPLEX kS = STALK S\n"
    "TASK verify-witness id\n"
    "TASK idem-witness L e AS w\n"
    "TASK perfect kS CUTOFF 50\n"
    "TASK verify-witness w SEED 9\n";

TEST(Tasks, JsonExamples) {
  auto w = parse_workspace(kTasks);
  auto id = run_task(w, "1").json();
  EXPECT_EQ(id["verdict"], "pass");
  EXPECT_EQ(id["level"], 0);
  auto iw = run_task(w, "w").json();
  EXPECT_EQ(iw["verdict"], "pass");
  EXPECT_EQ(iw["level"], 0);
  EXPECT_EQ(iw["as"], "w");
  auto pf = run_task(w, "3").json();
  EXPECT_EQ(pf["verdict"], "not_perfect_within_cutoff");
  EXPECT_EQ(pf["cutoff"], 50);
  EXPECT_FALSE(pf.contains("seconds"));
  // depends on task 2, which runs first without a report
  auto v = run_task(w, "4");
  EXPECT_EQ(v.status, Status::Pass);
  EXPECT_EQ(v.seed, 9u);
}

TEST(Tasks, UnknownTask) {
  auto w = parse_workspace(kTasks);
  EXPECT_THROW(run_task(w, "nope"), UnknownTask);
  EXPECT_THROW(run_task(w, "5"), UnknownTask);
  EXPECT_THROW(run_task(w, "0"), UnknownTask);
}

TEST(Tasks, DefaultsAndOverrides) {
  auto w = parse_workspace(kTasks);
  RunOptions opt;
  opt.cutoff = 12;
  opt.seed = 4;
  auto rs = run_all(w, opt);
  EXPECT_EQ(rs[0].cutoff, 12);
  EXPECT_EQ(rs[0].seed, 4u);
  EXPECT_EQ(rs[2].cutoff, 50);  // the task's own CUTOFF wins
  EXPECT_EQ(rs[3].seed, 9u);
  auto plain = run_all(w);
  EXPECT_EQ(plain[0].cutoff, 50);
  EXPECT_EQ(plain[0].seed, 0u);
  opt.timing = true;
  EXPECT_TRUE(run_task(w, "1", opt).json().contains("seconds"));
}

TEST(Tasks, ExitCodes) {
  const std::string base = kTasks;
  EXPECT_EQ(exit_code(run_all(parse_workspace(read_data("passing.ws")))), 0);
  EXPECT_EQ(exit_code(run_all(parse_workspace(base + "TASK pd S\n"))), 1);
  EXPECT_EQ(exit_code({run_task(parse_workspace(base + "QUIVER T2\n  VERTICES 1 2\n  ARROW a: 1 -> 2\n"
                                                       "TASK vdim T2 CUTOFF 0\n"),
                                "5")}),
            2);
  // build-witness needs a complex of bimodules
  auto err = run_task(parse_workspace(base + "TASK build-witness kS\n"), "5");
  EXPECT_EQ(err.status, Status::Error);
  EXPECT_NE(err.error.find("TagMismatch"), std::string::npos) << err.error;
  EXPECT_EQ(exit_code({err}), 3);
}

TEST(Tasks, ReproducibleReports) {
  for (const std::string text : {read_data("basic.ws"), read_data("passing.ws")}) {
    auto w = parse_workspace(text);
    const std::string a = reports_json(w, run_all(w));
    const std::string b = reports_json(parse_workspace(text), run_all(parse_workspace(text)));
    EXPECT_EQ(a, b);
    RunOptions par;
    par.parallel = true;
    EXPECT_EQ(reports_json(w, run_all(w, par)), a);
    auto j = nlohmann::ordered_json::parse(a);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["reports"].size(), w.tasks().size());
  }
}

TEST(Tasks, ReportsOfEveryKind) {
  auto w = parse_workspace(read_data("kinds.ws"));
  auto rs = run_all(w);
  std::map<std::string, std::string> got;
  for (const auto& r : rs) {
    EXPECT_NE(r.status, Status::Error) << r.text();
    got[r.kind] = r.verdict;
  }
  EXPECT_EQ(got.size(), 16u);
  EXPECT_EQ(got["check-algebra"], "valid");
  EXPECT_EQ(got["syzygy"], "computed");
  EXPECT_EQ(got["gorenstein"], "gorenstein");
  EXPECT_EQ(got["hom-check"], "pass");
  EXPECT_EQ(got["idem-check"], "pass");
  EXPECT_EQ(got["morita-witness"], "pass");
}

}  // namespace
}  // namespace singeq::testing
