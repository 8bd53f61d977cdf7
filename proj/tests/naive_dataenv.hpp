// Independent reference model for device data-environment reference
// counting. Deliberately minimal: a plain name -> count map updated by
// the rules below, with no event machinery. Used only to cross-check
// the real simulator; keep it free of accverify/dataenv.hpp.
//
// Rules:
//   enter (copyin/create/copy@enter): absent -> count 1; present -> +1
//   exit  (copyout/delete/copy@exit): present -> -1, erased at 0;
//                                     absent  -> no state change
#pragma once

#include <map>
#include <string>
#include <vector>

namespace naive {

enum class OpKind { copyin, copyout, copy, create, del };
enum class OpScope { region_enter, region_exit, enter_data, exit_data };

struct Op {
  OpKind kind;
  std::string var;
  OpScope scope;
};

inline bool enter_side(const Op& op) {
  return op.scope == OpScope::region_enter || op.scope == OpScope::enter_data;
}

inline std::map<std::string, int> run(const std::vector<Op>& ops) {
  std::map<std::string, int> counts;
  for (const Op& op : ops) {
    if (enter_side(op)) {
      counts[op.var] += 1;
    } else {
      auto it = counts.find(op.var);
      if (it == counts.end()) continue;  // zero-count exit: no decrement ever
      it->second -= 1;
      if (it->second == 0) counts.erase(it);
    }
  }
  return counts;
}

}  // namespace naive
