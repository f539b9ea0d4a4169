// Reduces a datum whose s has a free part to finite order and prints the
// plan.
//
//   reduce_free_part [DATUM.json]

#include <cstdio>

#include "endatlas/endatlas.hpp"

int main(int argc, char** argv) {
  using namespace endatlas;
  try {
    EndoscopicDatum d;
    if (argc > 1) {
      d = read_datum_file(argv[1]);
    } else {
      SettingPtr st = make_setting("B2", "c2:inner");
      // α₁(s) = -1 · x, α₂(s) = -1
      TorusElement s = TorusElement::from_parts({Rational(1, 2), Rational(1, 2)}, {{Rational(1)}, {Rational(0)}});
      d = make_datum(st, s, trivial_cocycle(*st));
    }
    Reduction r = finite_order_reduction(d, d);
    std::printf("%s\n", plan_json(r.plan).dump(2).c_str());
    PlanCertificate cert = certify_plan(d.rs(), d.s, r.plan, automorphism_family(d.rs(), d.s, d.b_prime));
    std::printf("tested %zu automorphisms, %zu fix s, %zu violations\n", cert.automorphisms_tested, cert.fixers,
                cert.violations.size());
    return cert.ok() ? 0 : 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
