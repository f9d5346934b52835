#include "doctest.h"

#include "dercat/derived.hpp"
#include "dercat/session.hpp"

using namespace dercat;

TEST_CASE("end-to-end session from the grammar examples") {
  auto doc = SessionDocument::parse("ring QQ[x] grevlex; ideal a = (x); supp-member (x) R;");
  auto res = doc.run(SessionOptions{});
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("supp-member: yes") != std::string::npos);
}

TEST_CASE("empty document") {
  auto doc = SessionDocument::parse("");
  CHECK(doc.command_count() == 0);
  auto res = doc.run(SessionOptions{});
  CHECK(res.output.empty());
  CHECK(res.exit_code == 0);
}

TEST_CASE("d*d != 0 is a semantic error at parse time") {
  CHECK_THROWS_AS(SessionDocument::parse("ring QQ[x] grevlex; complex X = { 1: [[x]], 2: [[x]] };"),
                  error);
}

TEST_CASE("syntax errors carry positions") {
  try {
    SessionDocument::parse("ring QQ[x] grevlex;\nideal a = (x;\n");
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::syntax_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("round trip: print(parse(print(doc))) is byte-identical") {
  std::vector<std::string> sessions = {
      "ring QQ[x,y] grevlex;\nideal a = (x^2, x*y);\nmodule M = coker [[x,0],[0,y]];\n"
      "complex K = koszul(x, y);\nsupp K;\ntor M M window 0 2;\n",
      "ring ZZ;\nmodule M = coker [[4]];\nmodule N = coker [[6]];\nsnf [[2,4],[6,8]];\n"
      "tor M N window 0 1;\n",
      "dvr A = sum(E, shift(1, T(2)));\ndvr-eval rhom(A, A);\ndvr-cosupp A;\n",
      "ring Fp(32003)[x,y] lex;\nideal a = (x*y - 1);\nsupp-member (x, y) R;\n",
  };
  for (const auto& s : sessions) {
    auto p1 = SessionDocument::parse(s).print();
    auto p2 = SessionDocument::parse(p1).print();
    CHECK(p1 == p2);
  }
}

TEST_CASE("identical sessions with identical seeds produce identical reports") {
  std::string s = "verify koszul-duality seed 7 count 4;\nverify oracle-crosschecks seed 9 count 4;\n";
  auto r1 = SessionDocument::parse(s).run(SessionOptions{});
  auto r2 = SessionDocument::parse(s).run(SessionOptions{});
  // strip the elapsed-time lines, which are the one legitimately varying part
  auto strip = [](std::string text) {
    std::string out;
    std::size_t start = 0;
    while (start < text.size()) {
      auto nl = text.find('\n', start);
      auto line = text.substr(start, nl - start);
      if (line.find("result:") == std::string::npos) out += line + "\n";
      start = nl == std::string::npos ? text.size() : nl + 1;
    }
    return out;
  };
  CHECK(strip(r1.output) == strip(r2.output));
  CHECK(r1.exit_code == 0);
}

TEST_CASE("dvr commands match the worked example") {
  auto doc = SessionDocument::parse("dvr-eval tensor(E, E);");
  auto res = doc.run(SessionOptions{});
  CHECK(res.output == "= shift(1, E)\n");
}

TEST_CASE("computation errors surface with exit code 2") {
  auto doc =
      SessionDocument::parse("ring QQ[x,y] grevlex; supp-member (x^2 + y^2) R;");  // not certifiable
  auto res = doc.run(SessionOptions{});
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("NotCertifiable") != std::string::npos);
}

TEST_CASE("structured output uses stable keys and string values") {
  auto doc = SessionDocument::parse("ring ZZ; snf [[2,4],[6,8]];");
  SessionOptions opts;
  opts.format = OutputFormat::structured;
  auto res = doc.run(opts);
  CHECK(res.output.find("\"001.snf.diagonal\": \"(2, 4)\"") != std::string::npos);
}

TEST_CASE("ZZ sessions: snf and Tor") {
  auto doc = SessionDocument::parse(
      "ring ZZ;\nmodule M = coker [[4]];\nmodule N = coker [[6]];\ntor M N window 0 1;\n");
  auto res = doc.run(SessionOptions{});
  CHECK(res.output.find("Tor_0 = Z^0 + Z/2") != std::string::npos);
  CHECK(res.output.find("Tor_1 = Z^0 + Z/2") != std::string::npos);
}

TEST_CASE("quotient ring sessions reduce arithmetic") {
  auto doc = SessionDocument::parse(
      "ring QQ[x] grevlex / (x^2);\nmodule M = coker [[x]];\ncosupp-member (x) M bound 6;\n");
  auto res = doc.run(SessionOptions{});
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("cosupp-member: yes") != std::string::npos);
}

TEST_CASE("cech inf sup for a single element") {
  QQPolyEngine eng{QQPolyRing{RatField{}, {"x"}, MonomialOrder{OrderKind::grevlex, 0}, {}}};
  auto x = eng.ring.var(0);
  {
    // Cech(x) against R: homology concentrated in degree -1
    auto v = cech_inf_sup_single(eng, x, free_module(eng, 1));
    CHECK(!v.exact);
    CHECK(v.inf == -1);
    CHECK(v.sup == -1);
    CHECK(v.amp == 0);
  }
  {
    // against R/(x): pure torsion, concentrated in degree 0
    auto v = cech_inf_sup_single(eng, x, cyclic_module(eng, make_ideal(eng.ring, {x})));
    CHECK(v.inf == 0);
    CHECK(v.sup == 0);
  }
  {
    // against R/(x - 1): x acts invertibly, acyclic
    auto m = cyclic_module(eng, make_ideal(eng.ring, {eng.ring.sub(x, eng.ring.one())}));
    CHECK(cech_inf_sup_single(eng, x, m).exact);
  }
}
