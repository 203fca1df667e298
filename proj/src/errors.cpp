#include "kaleido/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace kaleido {

namespace {

constexpr int kGenerateCap = 20;
constexpr int kSearchBudget = 512;

int env_cap() {
  const char* raw = std::getenv("KALEIDO_MAX_DEPTH");
  if (raw == nullptr || *raw == '\0') return -1;
  try {
    int v = std::stoi(raw);
    return v < 0 ? -1 : v;
  } catch (...) {
    return -1;
  }
}

}  // namespace

int capped_budget(int requested) {
  int cap = env_cap();
  return cap < 0 ? requested : std::min(requested, cap);
}

int max_generate_depth() { return capped_budget(kGenerateCap); }

int default_search_budget() { return capped_budget(kSearchBudget); }

}  // namespace kaleido
