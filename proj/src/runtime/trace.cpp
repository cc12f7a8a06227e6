#include "tillst/runtime/trace.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace tillst::runtime {

using AK = Action::Kind;
using json = nlohmann::ordered_json;

namespace {

const char* kind_name(AK k) {
    switch (k) {
        case AK::Silent:
        case AK::SendChan:
        case AK::RecvChan: return "chan";
        case AK::SendLbl:
        case AK::RecvLbl: return "label";
        case AK::SendClose:
        case AK::RecvClose: return "close";
        case AK::SendVal:
        case AK::RecvVal: return "value";
    }
    return "?";
}

}  // namespace

std::string to_json_line(const TraceEvent& e) {
    const Action& a = e.action;
    json j;
    j["time"] = e.time;
    j["dir"] = a.kind == AK::Silent ? "silent" : a.is_send() ? "send" : "recv";
    j["kind"] = kind_name(a.kind);
    j["channel"] = a.chan;
    switch (a.kind) {
        case AK::SendClose:
        case AK::RecvClose: j["payload"] = nullptr; break;
        case AK::SendVal:
        case AK::RecvVal: j["payload"] = syntax::to_string(a.value); break;
        default: j["payload"] = a.arg; break;
    }
    return j.dump();
}

syntax::Value parse_value(const std::string& s) {
    if (s == "true") return syntax::Value::boolean(true);
    if (s == "false") return syntax::Value::boolean(false);
    auto num = [&](std::string_view d) {
        std::int64_t n = 0;
        auto [p, ec] = std::from_chars(d.data(), d.data() + d.size(), n);
        if (ec != std::errc() || p != d.data() + d.size()) throw TraceFormatError("bad value '" + s + "'");
        return n;
    };
    auto colon = s.rfind(':');
    if (colon == std::string::npos) return syntax::Value::integer(num(s));
    return syntax::Value::opaque(s.substr(0, colon), num(std::string_view(s).substr(colon + 1)));
}

TraceEvent from_json_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& ex) {
        throw TraceFormatError(std::string("malformed trace line: ") + ex.what());
    }
    try {
        TraceEvent e;
        e.time = j.at("time").get<std::int64_t>();
        std::string dir = j.at("dir").get<std::string>();
        std::string kind = j.at("kind").get<std::string>();
        e.action.chan = j.at("channel").get<std::string>();
        const json& pl = j.at("payload");
        std::string payload = pl.is_null() ? std::string() : pl.get<std::string>();
        bool send = dir == "send";
        if (dir == "silent") {
            e.action = Action::silent(e.action.chan, payload);
        } else if (dir != "send" && dir != "recv") {
            throw TraceFormatError("bad dir '" + dir + "'");
        } else if (kind == "chan") {
            e.action.kind = send ? AK::SendChan : AK::RecvChan;
            e.action.arg = payload;
        } else if (kind == "label") {
            e.action.kind = send ? AK::SendLbl : AK::RecvLbl;
            e.action.arg = payload;
        } else if (kind == "close") {
            e.action.kind = send ? AK::SendClose : AK::RecvClose;
        } else if (kind == "value") {
            e.action.kind = send ? AK::SendVal : AK::RecvVal;
            e.action.value = parse_value(payload);
        } else {
            throw TraceFormatError("bad kind '" + kind + "'");
        }
        return e;
    } catch (const json::exception& ex) {
        throw TraceFormatError(std::string("bad trace event: ") + ex.what());
    }
}

void write_trace(std::ostream& os, const Trace& t) {
    for (const auto& e : t) os << to_json_line(e) << '\n';
}

Trace read_trace(std::istream& is) {
    Trace t;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        t.push_back(from_json_line(line));
    }
    return t;
}

}  // namespace tillst::runtime
