#pragma once

#include <stdexcept>
#include <string>

namespace kaleido {

// A search ran past its depth budget (the object exists only deeper).
struct budget_exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A request exceeds a configured resource cap.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Upper bound for generate(); KALEIDO_MAX_DEPTH lowers it.
int max_generate_depth();

// Depth budget for on-demand searches; KALEIDO_MAX_DEPTH lowers it.
int default_search_budget();

// Clamp a requested budget by KALEIDO_MAX_DEPTH when set.
int capped_budget(int requested);

}  // namespace kaleido
