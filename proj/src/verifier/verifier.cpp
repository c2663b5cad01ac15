#include <algorithm>
#include <random>
#include <set>

#include "nncomp/verifier.hpp"

namespace nncomp::verifier {

namespace {

void positive_atoms(const ltl::Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case ltl::Op::Atom:
      out.insert(f.name());
      return;
    case ltl::Op::Not:
      return;  // NNF: only literals are negated
    case ltl::Op::And:
    case ltl::Op::Or:
    case ltl::Op::Until:
      positive_atoms(f.lhs(), out);
      positive_atoms(f.rhs(), out);
      return;
    case ltl::Op::Next:
    case ltl::Op::Eventually:
      positive_atoms(f.operand(), out);
      return;
    case ltl::Op::True:
      return;
  }
}

}  // namespace

std::vector<std::string> controllers_for_edge(const ltl::Formula& guard,
                                              const std::vector<nn::NnController>& controllers) {
  const auto nnf = ltl::to_nnf(guard);
  if (!nnf) throw Error("guard has no negation normal form: " + ltl::to_string(guard));
  std::set<std::string> positive;
  positive_atoms(*nnf, positive);
  std::vector<std::string> out;
  for (const auto& c : controllers)
    if (positive.count(c.name())) out.push_back(c.name());
  return out;
}

const char* to_string(FailureKind k) {
  switch (k) {
    case FailureKind::AvoidViolation: return "avoid_violation";
    case FailureKind::FailureToReach: return "failure_to_reach";
    case FailureKind::NoControllers: return "no_controllers";
    case FailureKind::Divergence: return "divergence";
  }
  return "unknown";
}

EdgeResult verify_edge(const Problem& p, const EdgeQuery& q, const std::vector<std::string>& candidates,
                       bool all_certificates) {
  EdgeResult result;
  if (candidates.empty()) {
    EdgeAttempt a;
    a.from = q.from;
    a.to = q.to;
    a.kind = FailureKind::NoControllers;
    a.message = "no controller is associated with the guard " + ltl::to_string(q.target);
    result.attempts.push_back(std::move(a));
    return result;
  }
  const int first = q.entry_consumed ? 1 : 0;
  // Without a self-loop the source state must be left at its first step.
  const int last = q.self_loop ? p.reach.horizon : first;
  const double eps = p.reach.epsilon;

  for (const auto& name : candidates) {
    const auto& c = nn::find_controller(p.controllers, name);
    EdgeAttempt a;
    a.from = q.from;
    a.to = q.to;
    a.controller = name;
    reach::ReachStream stream(p.system, q.entry, c, p.bounds, p.reach);
    bool decided = false;
    for (int k = first; k <= last && !decided; ++k) {
      const ReachSet* rs = nullptr;
      try {
        rs = &stream.at(k);
      } catch (const reach::DivergenceError& e) {
        a.kind = FailureKind::Divergence;
        a.bad_t = e.t();
        a.message = e.what();
        decided = true;
        break;
      }
      StepRecord rec;
      rec.t = rs->t;
      rec.boxes = rs->boxes;
      rec.reach = space::guard_over_boxes(p.regions, q.target, rs->boxes, eps);
      if (rec.reach == Verdict::CertTrue) {
        a.certified = true;
        a.horizon = k;
        a.reach_verdict = rec.reach;
        a.steps.push_back(std::move(rec));
        result.certificates.push_back({q.from, q.to, name, k, q.entry, *rs});
        decided = true;
        break;
      }
      if (!q.self_loop) {
        a.kind = FailureKind::FailureToReach;
        a.bad_t = rs->t;
        a.reach_verdict = rec.reach;
        a.message = "source state has no self-loop and the target guard is not certain after " +
                    std::to_string(k) + " step(s)";
        a.steps.push_back(std::move(rec));
        decided = true;
        break;
      }
      rec.avoid = space::guard_over_boxes(p.regions, *q.self_loop, rs->boxes, eps);
      if (*rec.avoid != Verdict::CertTrue) {
        a.kind = FailureKind::AvoidViolation;
        a.bad_t = rs->t;
        a.reach_verdict = rec.reach;
        a.avoid_verdict = rec.avoid;
        a.message = std::string("self-loop guard is ") + space::to_string(*rec.avoid) + " at t=" +
                    std::to_string(rs->t);
        a.steps.push_back(std::move(rec));
        decided = true;
        break;
      }
      a.steps.push_back(std::move(rec));
    }
    if (!decided) {
      a.kind = FailureKind::FailureToReach;
      a.bad_t = q.entry.t + last;
      a.reach_verdict = a.steps.empty() ? Verdict::Unknown : a.steps.back().reach;
      a.message = "target guard not certain within " + std::to_string(last) + " steps";
    }
    const bool certified = a.certified;
    result.attempts.push_back(std::move(a));
    if (certified && !all_certificates) break;
  }
  return result;
}

VerifierResult reach_dfs(const automata::PreprocessedDfa& d, const Problem& p, const ReachSet& x0,
                         const SearchOptions& opts) {
  p.reach.validate();
  VerifierResult result;
  if (d.is_final(d.initial)) {
    result.verified = true;
    return result;
  }

  struct Frame {
    int node = 0;
    ReachSet entry;
    bool consumed = false;
    std::vector<int> children;  // edge indices into d.edges
    std::size_t next = 0;
    std::vector<EdgeCertificate> pending;  // certified branches of the current child
    int pending_edge = -1;
    std::size_t pending_next = 0;
  };

  std::mt19937_64 rng(opts.seed);
  auto make_frame = [&](int node, ReachSet entry, bool consumed) {
    Frame f;
    f.node = node;
    f.entry = std::move(entry);
    f.consumed = consumed;
    f.children = d.out_edges[static_cast<std::size_t>(node)];
    std::sort(f.children.begin(), f.children.end(), [&](int a, int b) {
      const auto& na = d.names[static_cast<std::size_t>(d.edges[static_cast<std::size_t>(a)].to)];
      const auto& nb = d.names[static_cast<std::size_t>(d.edges[static_cast<std::size_t>(b)].to)];
      return na != nb ? na < nb : a < b;
    });
    if (opts.shuffle) std::shuffle(f.children.begin(), f.children.end(), rng);
    return f;
  };

  std::vector<Frame> stack;
  std::vector<EdgeCertificate> chain;
  stack.push_back(make_frame(d.initial, x0, false));

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.pending_next < f.pending.size()) {
      EdgeCertificate cert = f.pending[f.pending_next++];
      const int child = d.edges[static_cast<std::size_t>(f.pending_edge)].to;
      ReachSet entry = cert.exit;
      chain.push_back(std::move(cert));
      if (d.is_final(child)) {
        result.verified = true;
        break;
      }
      stack.push_back(make_frame(child, std::move(entry), true));
      continue;
    }
    if (f.next >= f.children.size()) {
      stack.pop_back();
      if (!chain.empty()) chain.pop_back();
      continue;
    }
    const int ei = f.children[f.next++];
    const auto& e = d.edges[static_cast<std::size_t>(ei)];
    if (d.simple_path_mode) {
      const bool on_path = std::any_of(stack.begin(), stack.end(), [&](const Frame& g) { return g.node == e.to; });
      if (on_path) continue;
    }
    EdgeQuery q;
    q.from = d.names[static_cast<std::size_t>(f.node)];
    q.to = d.names[static_cast<std::size_t>(e.to)];
    q.target = e.guard;
    if (const auto loop = d.self_loop[static_cast<std::size_t>(f.node)])
      q.self_loop = d.edges[static_cast<std::size_t>(*loop)].guard;
    q.entry = f.entry;
    q.entry_consumed = f.consumed;
    EdgeResult r = verify_edge(p, q, controllers_for_edge(e.guard, p.controllers), opts.try_all_controllers);
    for (auto& a : r.attempts) result.log.push_back(std::move(a));
    if (!r.certificates.empty()) {
      f.pending = std::move(r.certificates);
      f.pending_edge = ei;
      f.pending_next = 0;
    }
  }

  if (result.verified) {
    result.certificates = chain;
    for (const auto& c : chain) result.strategy.steps.push_back({c.controller, c.horizon});
  }
  return result;
}

}  // namespace nncomp::verifier
