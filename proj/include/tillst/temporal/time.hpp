#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tillst/error.hpp"

namespace tillst::temporal {

// The distinguished origin is spelled `t0` or `init` in source and always denotes 0.
inline constexpr const char* kInitName = "init";

struct TimeVar {
    std::string name;

    auto operator<=>(const TimeVar&) const = default;
};

// A variable (or the origin) plus a constant offset. Nested shifts are
// flattened at construction so structural equality is semantic equality of
// the linear form.
class TimeExpr {
public:
    TimeExpr() = default;

    static TimeExpr init(std::int64_t offset = 0) { return TimeExpr(std::nullopt, offset); }
    static TimeExpr var(TimeVar v, std::int64_t offset = 0) { return TimeExpr(std::move(v), offset); }
    static TimeExpr var(std::string name, std::int64_t offset = 0) {
        return TimeExpr(TimeVar{std::move(name)}, offset);
    }

    bool is_closed() const { return !base_.has_value(); }
    const std::optional<TimeVar>& base() const { return base_; }
    std::int64_t offset() const { return offset_; }

    TimeExpr shifted(std::int64_t k) const { return TimeExpr(base_, offset_ + k); }

    bool operator==(const TimeExpr&) const = default;

private:
    TimeExpr(std::optional<TimeVar> base, std::int64_t offset) : base_(std::move(base)), offset_(offset) {}

    std::optional<TimeVar> base_;
    std::int64_t offset_ = 0;
};

class NonClosedTime : public Error {
public:
    using Error::Error;
};

TimeExpr normalize_time(const TimeExpr& e);
std::int64_t eval_closed(const TimeExpr& e);
std::string to_string(const TimeExpr& e);

// Core propositions. Neq, Lt, Gt, Geq, negation and ranges are sugar built by
// the helper constructors below.
class Prop {
public:
    enum class Kind { Top, Bot, And, Or, Imp, Eq, Leq };

    Prop() : Prop(Kind::Top) {}

    static Prop top() { return Prop(Kind::Top); }
    static Prop bot() { return Prop(Kind::Bot); }
    static Prop eq(TimeExpr a, TimeExpr b);
    static Prop leq(TimeExpr a, TimeExpr b);
    static Prop conj(Prop a, Prop b);
    static Prop disj(Prop a, Prop b);
    static Prop imp(Prop a, Prop b);

    static Prop neq(TimeExpr a, TimeExpr b);
    static Prop lt(TimeExpr a, TimeExpr b);
    static Prop gt(TimeExpr a, TimeExpr b) { return lt(std::move(b), std::move(a)); }
    static Prop geq(TimeExpr a, TimeExpr b) { return leq(std::move(b), std::move(a)); }
    static Prop negate(Prop a) { return imp(std::move(a), bot()); }
    static Prop in_range(TimeExpr lo, TimeExpr t, TimeExpr hi);
    static Prop all(const std::vector<Prop>& ps);

    Kind kind() const { return kind_; }
    bool is_atom() const { return kind_ == Kind::Eq || kind_ == Kind::Leq; }
    const TimeExpr& lhs() const { return lhs_; }
    const TimeExpr& rhs() const { return rhs_; }
    const Prop& left() const { return *left_; }
    const Prop& right() const { return *right_; }

    bool operator==(const Prop& o) const;

private:
    explicit Prop(Kind k) : kind_(k) {}

    Kind kind_;
    TimeExpr lhs_, rhs_;
    std::shared_ptr<const Prop> left_, right_;
};

std::string to_string(const Prop& p);

using TimeCtx = std::set<TimeVar>;
using PropCtx = std::vector<Prop>;

// Values for every free variable; the origin is implicitly 0.
using Assignment = std::map<TimeVar, std::int64_t>;

std::int64_t eval(const TimeExpr& e, const Assignment& a);
bool eval(const Prop& p, const Assignment& a);

// Evaluate a proposition with no free variables.
bool eval_closed(const Prop& p);

void free_vars(const TimeExpr& e, std::set<TimeVar>& out);
void free_vars(const Prop& p, std::set<TimeVar>& out);
std::set<TimeVar> free_vars(const Prop& p);

TimeExpr subst(const TimeExpr& e, const TimeVar& v, const TimeExpr& by);
Prop subst(const Prop& p, const TimeVar& v, const TimeExpr& by);

bool is_reserved_time_name(const std::string& name);

}  // namespace tillst::temporal
