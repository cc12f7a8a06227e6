#include "tillst/runtime/config.hpp"

#include <algorithm>
#include <sstream>

#include "tillst/syntax/ops.hpp"
#include "tillst/syntax/printer.hpp"

namespace tillst::runtime {

using AK = Action::Kind;

bool Action::is_send() const {
    return kind == AK::SendChan || kind == AK::SendLbl || kind == AK::SendClose || kind == AK::SendVal;
}

bool Action::is_recv() const {
    return kind == AK::RecvChan || kind == AK::RecvLbl || kind == AK::RecvClose || kind == AK::RecvVal;
}

Action complementary(const Action& a) {
    Action b = a;
    switch (a.kind) {
        case AK::Silent: break;
        case AK::SendChan: b.kind = AK::RecvChan; break;
        case AK::RecvChan: b.kind = AK::SendChan; break;
        case AK::SendLbl: b.kind = AK::RecvLbl; break;
        case AK::RecvLbl: b.kind = AK::SendLbl; break;
        case AK::SendClose: b.kind = AK::RecvClose; break;
        case AK::RecvClose: b.kind = AK::SendClose; break;
        case AK::SendVal: b.kind = AK::RecvVal; break;
        case AK::RecvVal: b.kind = AK::SendVal; break;
    }
    return b;
}

std::string to_string(const Action& a) {
    switch (a.kind) {
        case AK::Silent: return "eps" + (a.arg.empty() ? std::string() : "(" + a.arg + ")");
        case AK::SendChan: return a.chan + "!ch(" + a.arg + ")";
        case AK::RecvChan: return a.chan + "?ch(" + a.arg + ")";
        case AK::SendLbl: return a.chan + "!" + a.arg;
        case AK::RecvLbl: return a.chan + "?" + a.arg;
        case AK::SendClose: return a.chan + "!cls";
        case AK::RecvClose: return a.chan + "?cls";
        case AK::SendVal: return a.chan + "!val(" + syntax::to_string(a.value) + ")";
        case AK::RecvVal: return a.chan + "?val(" + syntax::to_string(a.value) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------- constructors

Configuration Configuration::proc(Channel a, ProcPtr p) {
    Configuration c;
    c.kind = Kind::Proc;
    c.chan = std::move(a);
    c.body = std::move(p);
    return c;
}

Configuration Configuration::fwd(Channel provider, Channel client) {
    Configuration c;
    c.kind = Kind::FwdNode;
    c.chan = std::move(provider);
    c.target = std::move(client);
    return c;
}

Configuration Configuration::par(std::vector<Configuration> kids) {
    Configuration c;
    c.kind = Kind::Par;
    c.kids = std::move(kids);
    return c;
}

Configuration Configuration::par(Configuration a, Configuration b) {
    std::vector<Configuration> k;
    k.push_back(std::move(a));
    k.push_back(std::move(b));
    return par(std::move(k));
}

Configuration Configuration::automaton(Channel a, std::string machine, std::string state, std::int64_t entry) {
    Configuration c;
    c.kind = Kind::Automaton;
    c.chan = std::move(a);
    c.machine = std::move(machine);
    c.state = std::move(state);
    c.entry = entry;
    return c;
}

Configuration Configuration::observer(Channel a, ObserverState s) {
    Configuration c;
    c.kind = Kind::Observer;
    c.chan = std::move(a);
    c.obs = std::make_shared<const ObserverState>(std::move(s));
    return c;
}

// ---------------------------------------------------------------- congruence

namespace {

void flatten(const Configuration& c, std::vector<Configuration>& out) {
    if (c.kind == Configuration::Kind::Par) {
        for (const auto& k : c.kids) flatten(k, out);
    } else {
        out.push_back(c);
    }
}

int rank(Configuration::Kind k) {
    switch (k) {
        case Configuration::Kind::Proc: return 0;
        case Configuration::Kind::Automaton: return 1;
        case Configuration::Kind::FwdNode: return 2;
        case Configuration::Kind::Observer: return 3;
        default: return 4;
    }
}

bool provides(const Configuration& c, const Channel& a) {
    using K = Configuration::Kind;
    return (c.kind == K::Proc || c.kind == K::Automaton || c.kind == K::FwdNode) && c.chan == a;
}

bool dead(const Configuration& c) {
    if (c.kind == Configuration::Kind::Stop) return true;
    return c.kind == Configuration::Kind::Observer && !c.obs->type;
}

std::string sort_key(const Configuration& c) {
    std::string k = c.chan + '\x01' + char('0' + rank(c.kind));
    if (c.kind == Configuration::Kind::FwdNode) k += c.target;
    return k;
}

}  // namespace

std::vector<Configuration> atoms(const Configuration& c) {
    std::vector<Configuration> out;
    flatten(c, out);
    return out;
}

Configuration congruence_normalize(const Configuration& c) {
    std::vector<Configuration> xs;
    flatten(c, xs);
    std::erase_if(xs, dead);

    // Merge each forward into the provider of its target; chains contract.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < xs.size() && !changed; ++i) {
            if (xs[i].kind != Configuration::Kind::FwdNode || xs[i].chan == xs[i].target) continue;
            for (std::size_t j = 0; j < xs.size(); ++j) {
                if (j == i || !provides(xs[j], xs[i].target)) continue;
                xs[j].chan = xs[i].chan;
                xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }

    std::stable_sort(xs.begin(), xs.end(),
                     [](const Configuration& a, const Configuration& b) { return sort_key(a) < sort_key(b); });
    if (xs.empty()) return Configuration::stop();
    if (xs.size() == 1) return xs.front();
    return Configuration::par(std::move(xs));
}

bool same_config(const Configuration& a, const Configuration& b) {
    using K = Configuration::Kind;
    if (a.is_stop() && b.is_stop()) return true;
    if (a.kind != b.kind || a.chan != b.chan) return false;
    switch (a.kind) {
        case K::Stop: return true;
        case K::Proc: return syntax::same_process(a.body, b.body);
        case K::FwdNode: return a.target == b.target;
        case K::Automaton: return a.machine == b.machine && a.state == b.state && a.entry == b.entry;
        case K::Observer: {
            const auto &x = *a.obs, &y = *b.obs;
            return x.since == y.since && x.supplies == y.supplies && syntax::same_type(x.type, y.type);
        }
        case K::Par:
            if (a.kids.size() != b.kids.size()) return false;
            for (std::size_t i = 0; i < a.kids.size(); ++i)
                if (!same_config(a.kids[i], b.kids[i])) return false;
            return true;
    }
    return false;
}

bool equivalent(const Configuration& a, const Configuration& b) {
    return same_config(congruence_normalize(a), congruence_normalize(b));
}

std::set<Channel> channel_names(const Configuration& c) {
    std::set<Channel> out;
    for (const auto& x : atoms(c)) {
        if (x.kind == Configuration::Kind::Stop) continue;
        out.insert(x.chan);
        if (x.kind == Configuration::Kind::FwdNode) out.insert(x.target);
        if (x.kind == Configuration::Kind::Proc) {
            auto fc = syntax::free_channels(*x.body);
            out.insert(fc.begin(), fc.end());
        }
        if (x.kind == Configuration::Kind::Observer) out.insert(x.obs->supplies.begin(), x.obs->supplies.end());
    }
    return out;
}

std::vector<Channel> providers(const Configuration& c) {
    std::vector<Channel> out;
    for (const auto& x : atoms(c)) {
        if (x.kind == Configuration::Kind::Proc || x.kind == Configuration::Kind::Automaton) out.push_back(x.chan);
    }
    return out;
}

bool providers_distinct(const Configuration& c) {
    auto ps = providers(c);
    std::set<Channel> seen(ps.begin(), ps.end());
    return seen.size() == ps.size();
}

namespace {

std::string head(const syntax::Process& p) {
    std::ostringstream os;
    os << syntax::keyword(p.kind);
    if (syntax::is_client_form(p.kind) || p.kind == syntax::Process::Kind::Fwd ||
        p.kind == syntax::Process::Kind::Spawn) {
        os << "<" << temporal::to_string(p.at) << ">";
    } else if (syntax::is_provider_form(p.kind)) {
        os << "<" << p.binder.name << " where " << temporal::to_string(p.pred) << ">";
    }
    if (!p.chan.empty()) os << "(" << p.chan << ")";
    if (p.kind == syntax::Process::Kind::Spawn) os << "(" << p.callee << ")";
    return os.str();
}

}  // namespace

std::string to_string(const Configuration& c) {
    using K = Configuration::Kind;
    switch (c.kind) {
        case K::Stop: return "0";
        case K::Proc: return "[" + c.chan + "] " + head(*c.body);
        case K::FwdNode: return "fwd(" + c.chan + " -> " + c.target + ")";
        case K::Automaton: return "[" + c.chan + "] " + c.machine + "." + c.state + "@" + std::to_string(c.entry);
        case K::Observer:
            return "harness(" + c.chan + ") " + (c.obs->type ? syntax::print_type(*c.obs->type) : std::string("done"));
        case K::Par: {
            std::string s;
            for (const auto& k : c.kids) s += (s.empty() ? "" : " | ") + to_string(k);
            return s.empty() ? "0" : s;
        }
    }
    return "?";
}

}  // namespace tillst::runtime
