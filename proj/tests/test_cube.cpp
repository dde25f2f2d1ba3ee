#include <doctest.h>

#include <sstream>

#include "cube/box.hpp"
#include "cube/oracle.hpp"
#include "cube/psh.hpp"
#include "cube/sieve.hpp"

using namespace ctt;
using namespace ctt::cube;

TEST_CASE("box hom-set sizes from enumeration") {
  BoxCat box(3);
  CHECK(box.hom_size(0, 1) == 2);
  CHECK(box.hom_size(1, 1) == 3);
  CHECK(box.hom_size(2, 1) == 6);
  CHECK(box.hom_size(3, 1) == 20);
  CHECK(box.mono(0).size() == 2);
  CHECK(box.mono(3).size() == 20);
}

TEST_CASE("interval presheaf levels") {
  BoxCat box(2);
  Psh iv = psh_interval(box);
  CHECK(iv.card[0] == 2);
  CHECK(iv.card[1] == 3);
  CHECK(iv.card[2] == 6);
  std::string why;
  CHECK(iv.check_functorial(&why));
}

TEST_CASE("sieve semantics basics") {
  BoxCat box(2);
  CHECK(cof_sieve(box, Dnf::bot(), 1).member[1] ==
        std::vector<char>{0, 0, 0});
  Sieve top = maximal_sieve(box, 1);
  for (auto& lvl : top.member)
    for (char c : lvl) CHECK(c == 1);
  Dnf faces = dnf_or(Dnf{{Assign{{0, false}}}}, Dnf{{Assign{{0, true}}}});
  Sieve s = cof_sieve(box, faces, 1);
  CHECK(sieve_leq(s, top));
  CHECK(!(s == top));
  CHECK(sieve_closed(box, s));
}

TEST_CASE("canonical cof enumeration counts") {
  CHECK(enumerate_canonical_cofs(0).size() == 2); // top, bot
  // one variable: bot, (i=0), (i=1), (i=0)\/(i=1), top
  CHECK(enumerate_canonical_cofs(1).size() == 5);
  std::ostringstream note;
  note << "two variables: " << enumerate_canonical_cofs(2).size();
  INFO(note.str());
  CHECK(enumerate_canonical_cofs(2).size() > 20);
}

TEST_CASE("nabla sizes and delta evaluation") {
  BoxCat box(2);
  Psh n2 = psh_nabla(box, 2);
  CHECK(n2.card[0] == 2);
  CHECK(n2.card[1] == 4);
  CHECK(n2.card[2] == 16);
  CHECK(eval_at0(psh_delta(box, 5)) == 5);
  std::string why;
  CHECK(n2.check_functorial(&why));
}

TEST_CASE("exponential by the interval at level 0 counts paths") {
  BoxCat box(2);
  Psh iv = psh_interval(box);
  ExpPsh e = psh_exp(iv, iv);
  // Nat(I, I) = I(1) = 3
  CHECK((int)e.families[0].size() == 3);
}

TEST_CASE("oracle suites pass at dimension 2") {
  OracleOptions opt;
  opt.dim = 2;
  opt.depth = 3;
  for (const auto& suite :
       {"box", "interval", "delta-nabla", "discrete", "wprime",
        "coproduct-null"}) {
    auto recs = run_suite(suite, opt);
    for (const auto& r : recs) {
      INFO(r.suite << "/" << r.name << " (" << r.instance << "): "
                   << r.witness);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("cof completeness at dimension 2") {
  OracleOptions opt;
  opt.dim = 2;
  auto recs = run_suite("cof-completeness", opt);
  for (const auto& r : recs) {
    INFO(r.suite << "/" << r.name << " (" << r.instance << "): "
                 << r.witness);
    CHECK(r.pass);
  }
}
