// Executable model of the device data environment: a present-table of
// variables with reference counters, driven by data-movement operations.
// Behavior at a zero-count exit is version-dependent: 3.0 and earlier
// raise a (modeled) runtime error, 3.1 and later take no action.
//
// The model keeps a single reference counter per variable; OpenACC's
// structured/dynamic counter split is collapsed into it deliberately, and
// splitting the field later does not change the public surface.
#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "accverify/directive.hpp"
#include "accverify/spec_version.hpp"

namespace accv::dataenv {

enum class OpKind { copyin, copyout, copy, create, del };
enum class OpScope { region_enter, region_exit, enter_data, exit_data };

struct DataOp {
  OpKind kind;
  std::string var;
  OpScope scope;
};

enum class EventKind { alloc, copy_in, copy_out, dealloc, no_action, runtime_error };

inline const char* event_name(EventKind k) {
  switch (k) {
    case EventKind::alloc: return "ALLOC";
    case EventKind::copy_in: return "COPYIN";
    case EventKind::copy_out: return "COPYOUT";
    case EventKind::dealloc: return "DEALLOC";
    case EventKind::no_action: return "NOACTION";
    case EventKind::runtime_error: return "RUNTIME_ERROR";
  }
  return "?";
}

// ref_before/ref_after are the variable's counter around the whole
// operation; several events from one op share them.
struct DataEvent {
  EventKind kind;
  std::string var;
  int ref_before = 0;
  int ref_after = 0;

  friend bool operator==(const DataEvent&, const DataEvent&) = default;
};

struct PresentEntry {
  std::string var;
  int ref_count = 0;  // entry exists iff ref_count >= 1
  std::string device_value;  // opaque snapshot; the model never inspects it
};

struct DataEnv {
  SpecVersion version{3, 1};
  std::map<std::string, PresentEntry> entries;
  std::vector<DataEvent> event_log;

  int ref_count(const std::string& var) const {
    auto it = entries.find(var);
    return it == entries.end() ? 0 : it->second.ref_count;
  }
};

inline bool is_present(const DataEnv& env, const std::string& var) {
  return env.ref_count(var) >= 1;
}

struct ScopeError : std::runtime_error {
  explicit ScopeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnsupportedDirective : std::runtime_error {
  explicit UnsupportedDirective(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool enter_scope(OpScope s) {
  return s == OpScope::region_enter || s == OpScope::enter_data;
}

// copyin/create belong to enter scopes, copyout/delete to exit scopes;
// copy is only meaningful on structured region boundaries.
inline void check_scope(const DataOp& op) {
  switch (op.kind) {
    case OpKind::copyin:
    case OpKind::create:
      if (!enter_scope(op.scope)) throw ScopeError("copyin/create op on an exit scope");
      return;
    case OpKind::copyout:
    case OpKind::del:
      if (enter_scope(op.scope)) throw ScopeError("copyout/delete op on an enter scope");
      return;
    case OpKind::copy:
      if (op.scope == OpScope::enter_data || op.scope == OpScope::exit_data)
        throw ScopeError("copy op outside a structured region");
      return;
  }
}

inline bool transfers_in(OpKind k) { return k == OpKind::copyin || k == OpKind::copy; }
inline bool transfers_out(OpKind k) { return k == OpKind::copyout || k == OpKind::copy; }

// Pure state transition: the input environment is left untouched.
inline DataEnv apply(DataEnv env, const DataOp& op) {
  check_scope(op);
  int before = env.ref_count(op.var);
  auto log = [&](EventKind kind, int after) {
    env.event_log.push_back({kind, op.var, before, after});
  };

  if (enter_scope(op.scope)) {
    if (before == 0) {
      env.entries[op.var] = PresentEntry{op.var, 1, {}};
      log(EventKind::alloc, 1);
      if (transfers_in(op.kind)) log(EventKind::copy_in, 1);
    } else {
      env.entries[op.var].ref_count = before + 1;
      log(EventKind::no_action, before + 1);  // present: counter bump only
    }
    return env;
  }

  // exit side
  if (before == 0) {
    if (env.version <= SpecVersion{3, 0}) {
      log(EventKind::runtime_error, 0);
    } else {
      log(EventKind::no_action, 0);
    }
    return env;
  }
  int after = before - 1;
  if (after == 0) {
    if (transfers_out(op.kind)) log(EventKind::copy_out, 0);
    env.entries.erase(op.var);
    log(EventKind::dealloc, 0);
  } else {
    env.entries[op.var].ref_count = after;
    log(EventKind::no_action, after);
  }
  return env;
}

namespace detail {

inline bool modeled_data_clause(const std::string& name) {
  return name == "copy" || name == "copyin" || name == "copyout" || name == "create" ||
         name == "delete";
}

inline OpKind op_kind(const std::string& clause) {
  if (clause == "copy") return OpKind::copy;
  if (clause == "copyin") return OpKind::copyin;
  if (clause == "copyout") return OpKind::copyout;
  if (clause == "create") return OpKind::create;
  return OpKind::del;
}

// Exit-side counterpart of a clause on a structured data region.
inline OpKind region_exit_kind(OpKind enter_kind) {
  switch (enter_kind) {
    case OpKind::copy: return OpKind::copy;        // copyout at exit
    case OpKind::copyout: return OpKind::copyout;  // allocated at enter, copied at exit
    default: return OpKind::del;                   // copyin/create: release, no transfer
  }
}

// Enter-side behavior of a clause on a structured data region.
inline OpKind region_enter_kind(OpKind kind) {
  if (kind == OpKind::copyout) return OpKind::create;  // allocate only
  return kind;
}

}  // namespace detail

// Replays scanned directives against the environment. Structured `data`
// regions open at their directive and close — in clause order, innermost
// region first — at an explicit `end data`, at the next unstructured data
// directive (enter data, exit data, update), or when the directive stream
// ends; nothing else in a flat directive stream marks their extent.
// Compute directives carrying no modeled data clauses are skipped; ones
// that do carry them are rejected, since their implicit regions cannot be
// bracketed here.
inline DataEnv replay(DataEnv env, const std::vector<acc::Directive>& directives) {
  std::vector<std::vector<DataOp>> open_regions;

  auto close_regions = [&] {
    while (!open_regions.empty()) {
      for (const DataOp& op : open_regions.back()) env = apply(std::move(env), op);
      open_regions.pop_back();
    }
  };

  auto clause_vars = [](const acc::Clause& clause) {
    std::vector<std::string> vars;
    for (const auto& arg : clause.args) vars.push_back(arg.var());
    return vars;
  };

  for (const auto& d : directives) {
    if (d.name == "data") {
      std::vector<DataOp> exits;
      for (const auto& clause : d.clauses) {
        if (!detail::modeled_data_clause(clause.name)) continue;
        OpKind kind = detail::op_kind(clause.name);
        for (const auto& var : clause_vars(clause)) {
          env = apply(std::move(env),
                      DataOp{detail::region_enter_kind(kind), var, OpScope::region_enter});
          exits.push_back(DataOp{detail::region_exit_kind(kind), var, OpScope::region_exit});
        }
      }
      open_regions.push_back(std::move(exits));
      continue;
    }
    if (d.name == "end data") {  // explicit close, Fortran style
      if (!open_regions.empty()) {
        for (const DataOp& op : open_regions.back()) env = apply(std::move(env), op);
        open_regions.pop_back();
      }
      continue;
    }
    if (d.name == "enter data" || d.name == "exit data") {
      close_regions();
      bool entering = d.name == "enter data";
      OpScope scope = entering ? OpScope::enter_data : OpScope::exit_data;
      for (const auto& clause : d.clauses) {
        if (!detail::modeled_data_clause(clause.name)) continue;
        for (const auto& var : clause_vars(clause))
          env = apply(std::move(env), DataOp{detail::op_kind(clause.name), var, scope});
      }
      continue;
    }
    if (d.name == "update") {
      close_regions();
      for (const auto& clause : d.clauses) {
        bool to_host = clause.name == "host" || clause.name == "self";
        bool to_device = clause.name == "device";
        if (!to_host && !to_device) continue;
        for (const auto& var : clause_vars(clause)) {
          int ref = env.ref_count(var);
          env.event_log.push_back(
              {to_host ? EventKind::copy_out : EventKind::copy_in, var, ref, ref});
        }
      }
      continue;
    }
    // Anything else has no data-environment effect unless it names modeled
    // data clauses, which we cannot bracket from a flat directive stream.
    for (const auto& clause : d.clauses)
      if (detail::modeled_data_clause(clause.name))
        throw UnsupportedDirective("directive '" + d.name + "' at line " +
                                   std::to_string(d.location.line) +
                                   " carries data clauses replay cannot model");
  }
  close_regions();
  return env;
}

// One event per line: "EVENT var ref_before->ref_after".
inline std::string format_trace(const DataEnv& env) {
  std::ostringstream out;
  for (const auto& ev : env.event_log)
    out << event_name(ev.kind) << " " << ev.var << " " << ev.ref_before << "->" << ev.ref_after
        << "\n";
  return out.str();
}

}  // namespace accv::dataenv
