// Prints the elliptic data of a few small settings as plain text.
//
//   classify_table [TYPE GALOIS]...

#include <cstdio>
#include <string>
#include <vector>

#include "endatlas/endatlas.hpp"

int main(int argc, char** argv) {
  using namespace endatlas;
  std::vector<std::pair<std::string, std::string>> settings;
  for (int i = 1; i + 1 < argc; i += 2) settings.emplace_back(argv[i], argv[i + 1]);
  if (settings.empty()) settings = {{"A1", "c2:inner"}, {"A2", "c3:inner"}, {"C3", "trivial"}, {"D4", "s3"}};

  for (const auto& [type, galois] : settings) {
    try {
      SettingPtr st = make_setting(type, galois);
      ClassificationReport rep = classify_elliptic(st);
      std::printf("%s / %s: %zu classes from %zu pairs\n", type.c_str(), galois.c_str(), rep.classes.size(),
                  rep.pairs.size());
      for (const auto& c : rep.classes) {
        std::string orbit;
        for (int k : c.pair.orbit) orbit += (orbit.empty() ? "" : ",") + std::to_string(k);
        std::printf("  d=%-2lld orbit {%s}  dual %s  s=%s", static_cast<long long>(c.d), orbit.c_str(),
                    components_text(c.dual_components).c_str(), c.datum.s.to_string().c_str());
        if (c.out_size) std::printf("  |Out|=%zu", *c.out_size);
        std::printf("\n");
      }
    } catch (const Error& e) {
      std::fprintf(stderr, "%s / %s: %s\n", type.c_str(), galois.c_str(), e.what());
      return 2;
    }
  }
  return 0;
}
