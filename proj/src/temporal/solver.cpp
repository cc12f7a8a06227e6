#include "tillst/temporal/solver.hpp"

#include <functional>
#include <limits>
#include <map>

namespace tillst::temporal {

namespace {

// Negation-normal form over atoms only; integer negation turns a <= b into
// b + 1 <= a, so Bot/Top and the two atom kinds are enough.
enum class NKind { Top, Bot, And, Or, Leq, Neq };

struct NNode {
    NKind kind;
    TimeExpr a, b;  // Leq: a <= b. Neq: a != b.
    std::vector<NNode> kids;
};

NNode nnf(const Prop& p, bool positive) {
    using K = Prop::Kind;
    switch (p.kind()) {
        case K::Top: return NNode{positive ? NKind::Top : NKind::Bot, {}, {}, {}};
        case K::Bot: return NNode{positive ? NKind::Bot : NKind::Top, {}, {}, {}};
        case K::Leq:
            if (positive) return NNode{NKind::Leq, p.lhs(), p.rhs(), {}};
            return NNode{NKind::Leq, p.rhs().shifted(1), p.lhs(), {}};
        case K::Eq:
            if (positive) {
                return NNode{NKind::And, {}, {},
                             {NNode{NKind::Leq, p.lhs(), p.rhs(), {}}, NNode{NKind::Leq, p.rhs(), p.lhs(), {}}}};
            }
            return NNode{NKind::Neq, p.lhs(), p.rhs(), {}};
        case K::And:
            return NNode{positive ? NKind::And : NKind::Or, {}, {},
                         {nnf(p.left(), positive), nnf(p.right(), positive)}};
        case K::Or:
            return NNode{positive ? NKind::Or : NKind::And, {}, {},
                         {nnf(p.left(), positive), nnf(p.right(), positive)}};
        case K::Imp:
            // a -> b == ~a \/ b
            return NNode{positive ? NKind::Or : NKind::And, {}, {},
                         {nnf(p.left(), !positive), nnf(p.right(), positive)}};
    }
    return NNode{NKind::Top, {}, {}, {}};
}

class VarIndex {
public:
    std::size_t index(const TimeExpr& e) {
        if (e.is_closed()) return 0;
        auto [it, inserted] = ids_.try_emplace(*e.base(), ids_.size() + 1);
        if (inserted) names_.push_back(*e.base());
        return it->second;
    }
    void add(const TimeVar& v) { index(TimeExpr::var(v)); }
    std::size_t size() const { return ids_.size() + 1; }
    const std::vector<TimeVar>& names() const { return names_; }

private:
    std::map<TimeVar, std::size_t> ids_;
    std::vector<TimeVar> names_;
};

// a <= b  ==>  x_a - x_b <= off_b - off_a
DiffConstraint leq_constraint(VarIndex& idx, const TimeExpr& a, const TimeExpr& b) {
    return DiffConstraint{idx.index(a), idx.index(b), b.offset() - a.offset()};
}

// Depth-first expansion of the disjunctive normal form. Each complete branch
// is a conjunction of difference constraints checked immediately, so the
// expansion stops at the first satisfiable branch.
class DnfSearch {
public:
    DnfSearch(VarIndex& idx, std::size_t budget) : idx_(idx), budget_(budget) {}

    std::optional<std::vector<std::int64_t>> run(const std::vector<const NNode*>& roots) {
        std::vector<const NNode*> agenda(roots.rbegin(), roots.rend());
        std::vector<DiffConstraint> acc;
        return expand(agenda, acc);
    }

private:
    std::optional<std::vector<std::int64_t>> expand(std::vector<const NNode*>& agenda,
                                                    std::vector<DiffConstraint>& acc) {
        if (agenda.empty()) return solve_difference_constraints(idx_.size(), acc);
        const NNode* n = agenda.back();
        agenda.pop_back();
        std::optional<std::vector<std::int64_t>> result;
        switch (n->kind) {
            case NKind::Top:
                result = expand(agenda, acc);
                break;
            case NKind::Bot:
                break;
            case NKind::Leq:
                charge();
                acc.push_back(leq_constraint(idx_, n->a, n->b));
                result = expand(agenda, acc);
                acc.pop_back();
                break;
            case NKind::Neq: {
                // a != b  ==  a + 1 <= b  \/  b + 1 <= a
                charge();
                acc.push_back(leq_constraint(idx_, n->a.shifted(1), n->b));
                result = expand(agenda, acc);
                acc.pop_back();
                if (!result) {
                    acc.push_back(leq_constraint(idx_, n->b.shifted(1), n->a));
                    result = expand(agenda, acc);
                    acc.pop_back();
                }
                break;
            }
            case NKind::And: {
                std::size_t mark = agenda.size();
                for (auto it = n->kids.rbegin(); it != n->kids.rend(); ++it) agenda.push_back(&*it);
                result = expand(agenda, acc);
                agenda.resize(mark);
                break;
            }
            case NKind::Or:
                for (const NNode& kid : n->kids) {
                    agenda.push_back(&kid);
                    result = expand(agenda, acc);
                    agenda.pop_back();
                    if (result) break;
                }
                break;
        }
        agenda.push_back(n);
        return result;
    }

    void charge() {
        if (++used_ > budget_) {
            throw FormulaTooLarge("disjunctive expansion exceeded " + std::to_string(budget_) + " literals");
        }
    }

    VarIndex& idx_;
    std::size_t budget_;
    std::size_t used_ = 0;
};

}  // namespace

std::optional<std::vector<std::int64_t>> solve_difference_constraints(std::size_t n,
                                                                      const std::vector<DiffConstraint>& cs) {
    // Bellman-Ford from a virtual source joined to every node with weight 0.
    // Constraint x_u - x_v <= c is the edge v -> u of weight c.
    std::vector<std::int64_t> dist(n, 0);
    for (std::size_t round = 0; round <= n; ++round) {
        bool changed = false;
        for (const DiffConstraint& c : cs) {
            if (dist[c.v] + c.c < dist[c.u]) {
                dist[c.u] = dist[c.v] + c.c;
                changed = true;
            }
        }
        if (!changed) {
            std::vector<std::int64_t> model(n);
            for (std::size_t i = 0; i < n; ++i) model[i] = dist[i] - dist[0];
            return model;
        }
    }
    return std::nullopt;
}

std::optional<Assignment> solve_satisfiable(const TimeCtx& g, const PropCtx& f, const SolveOptions& opts) {
    VarIndex idx;
    for (const TimeVar& v : g) idx.add(v);
    std::vector<NNode> roots;
    roots.reserve(f.size());
    for (const Prop& p : f) roots.push_back(nnf(p, true));
    std::vector<const NNode*> ptrs;
    for (const NNode& r : roots) ptrs.push_back(&r);
    DnfSearch search(idx, opts.literal_budget);
    auto model = search.run(ptrs);
    if (!model) return std::nullopt;
    Assignment a;
    const auto& names = idx.names();
    for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = (*model)[i + 1];
    return a;
}

std::optional<Assignment> entailment_countermodel(const TimeCtx& g, const PropCtx& f, const Prop& p,
                                                  const SolveOptions& opts) {
    PropCtx all = f;
    all.push_back(Prop::negate(p));
    return solve_satisfiable(g, all, opts);
}

bool entails(const TimeCtx& g, const PropCtx& f, const Prop& p, const SolveOptions& opts) {
    return !entailment_countermodel(g, f, p, opts).has_value();
}

bool InternalBackend::entails(const TimeCtx& g, const PropCtx& f, const Prop& p) {
    return temporal::entails(g, f, p, opts_);
}

}  // namespace tillst::temporal
