#include "tillst/automata/monitor.hpp"

#include <optional>

#include "tillst/syntax/ops.hpp"
#include "tillst/syntax/printer.hpp"

namespace tillst::automata {

using AK = runtime::Action::Kind;
using SK = syntax::SessionType::Kind;
using temporal::TimeExpr;

const char* to_string(Verdict::Reason r) {
    switch (r) {
        case Verdict::Reason::None: return "none";
        case Verdict::Reason::Time: return "time";
        case Verdict::Reason::Shape: return "shape";
        case Verdict::Reason::EndOfTrace: return "end-of-trace";
        case Verdict::Reason::AfterClose: return "after-close";
    }
    return "?";
}

std::string Verdict::str() const {
    if (conforms()) return "Conforms";
    return "Violation(" + std::to_string(index) + ", " + to_string(reason) + ": " + detail + ")";
}

namespace {

AK expected(SK k) {
    switch (k) {
        case SK::Unit: return AK::SendClose;
        case SK::Tensor: return AK::SendChan;
        case SK::Lolli: return AK::RecvChan;
        case SK::InChoice: return AK::SendLbl;
        case SK::ExChoice: return AK::RecvLbl;
        case SK::Produce: return AK::SendVal;
        case SK::Request: return AK::RecvVal;
        case SK::Ref: break;
    }
    return AK::Silent;
}

Verdict violation(std::size_t i, Verdict::Reason r, std::string d) {
    return {Verdict::Kind::Violation, i, r, std::move(d)};
}

struct Sub {
    std::string chan;
    TraceObligation obl;
    std::size_t from;  // first trace index that may belong to it
};

// Walks one channel; `index_of` maps a position in `events` to a reported index.
template <class IndexOf, class OnChannel>
Verdict walk(const TraceObligation& obl, const std::vector<runtime::TraceEvent>& events, IndexOf index_of,
             OnChannel on_channel) {
    syntax::TypePtr ty = obl.type;
    for (const auto& [v, t] : obl.bound) ty = syntax::subst_time(ty, v, TimeExpr::init(t));
    std::int64_t cur = obl.current_time;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (e.action.kind == AK::Silent) continue;
        std::size_t at = index_of(i);
        if (!ty) return violation(at, Verdict::Reason::AfterClose, "event after the channel closed");
        if (ty->kind == SK::Ref) return violation(at, Verdict::Reason::Shape, "unexpanded type " + ty->ref);
        AK want = expected(ty->kind);
        if (e.action.kind != want) {
            return violation(at, Verdict::Reason::Shape,
                             std::string(syntax::connective_name(ty->kind)) + " expects " +
                                 runtime::to_string(runtime::Action{want, e.action.chan, "_", {}}) + ", got " +
                                 runtime::to_string(e.action));
        }
        if ((want == AK::SendVal || want == AK::RecvVal) && !(e.action.value.type() == ty->payload)) {
            return violation(at, Verdict::Reason::Shape,
                             "value " + syntax::to_string(e.action.value) + " is not of sort " +
                                 syntax::to_string(ty->payload));
        }
        if (e.time < cur) {
            return violation(at, Verdict::Reason::Time,
                             "t0+" + std::to_string(e.time) + " precedes the previous exchange at t0+" +
                                 std::to_string(cur));
        }
        auto inst = temporal::subst(ty->pred, ty->binder, TimeExpr::init(e.time));
        bool ok = false;
        try {
            ok = temporal::eval_closed(inst);
        } catch (const temporal::NonClosedTime&) {
            return violation(at, Verdict::Reason::Time, "predicate " + temporal::to_string(inst) + " is not closed");
        }
        if (!ok) return violation(at, Verdict::Reason::Time, temporal::to_string(inst) + " is false");

        auto next = [&](std::size_t part) { return syntax::subst_time(ty->parts.at(part), ty->binder, TimeExpr::init(e.time)); };
        switch (ty->kind) {
            case SK::Unit: ty = nullptr; break;
            case SK::Tensor:
            case SK::Lolli:
                on_channel(e.action.arg, next(0), e.time, i);
                ty = next(1);
                break;
            case SK::InChoice:
            case SK::ExChoice:
                if (e.action.arg != "L" && e.action.arg != "R")
                    return violation(at, Verdict::Reason::Shape, "bad label '" + e.action.arg + "'");
                ty = next(e.action.arg == "L" ? 0 : 1);
                break;
            default: ty = next(0); break;
        }
        cur = e.time;
    }
    if (ty) return violation(index_of(events.size()), Verdict::Reason::EndOfTrace, "trace ended before close");
    return {};
}

}  // namespace

Verdict monitor_trace(const TraceObligation& obl, const std::vector<runtime::TraceEvent>& events) {
    return walk(obl, events, [](std::size_t i) { return i; },
                [](const std::string&, const syntax::TypePtr&, std::int64_t, std::size_t) {});
}

Verdict monitor_channel(const TraceObligation& obl, const std::string& chan, const runtime::Trace& trace) {
    // When another channel forwards to ours, our provider goes on under that name.
    std::vector<runtime::TraceEvent> mine;
    std::vector<std::size_t> idx;
    std::string name = chan;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& a = trace[i].action;
        if (a.kind == AK::Silent) {
            if (a.arg == "fwd:" + name) name = a.chan;
        } else if (a.chan == name) {
            mine.push_back(trace[i]);
            idx.push_back(i);
        }
    }
    std::vector<Sub> subs;
    Verdict v = walk(
        obl, mine, [&](std::size_t i) { return i < idx.size() ? idx[i] : trace.size(); },
        [&](const std::string& c, const syntax::TypePtr& t, std::int64_t time, std::size_t i) {
            subs.push_back({c, TraceObligation{t, time, {}}, idx[i]});
        });
    std::optional<Verdict> first;
    if (!v.conforms()) first = v;
    for (const auto& s : subs) {
        runtime::Trace rest(trace.begin() + static_cast<std::ptrdiff_t>(s.from) + 1, trace.end());
        Verdict sv = monitor_channel(s.obl, s.chan, rest);
        if (sv.conforms()) continue;
        sv.index = sv.index + s.from + 1;
        if (!first || sv.index < first->index) first = sv;
    }
    return first ? *first : Verdict{};
}

}  // namespace tillst::automata
