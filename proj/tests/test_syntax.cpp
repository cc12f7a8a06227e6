#include <algorithm>
#include <filesystem>
#include <functional>

#include "doctest.h"
#include "support.hpp"
#include "tillst/syntax/ops.hpp"
#include "tillst/syntax/parser.hpp"
#include "tillst/syntax/printer.hpp"

using namespace tillst::syntax;
using tillst::temporal::Prop;
using tillst::temporal::TimeExpr;
using tillst::temporal::TimeVar;
using K = SessionType::Kind;
using PK = Process::Kind;

namespace {

std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(TILLST_CORPUS_DIR))
        if (e.path().extension() == ".tsl") out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

TypePtr T(const std::string& s) { return parse_type(s); }

}  // namespace

TEST_SUITE("syntax") {

TEST_CASE("unit type declaration") {
    auto prog = parse_program("type T = Unit<t where Leq<t0,t>>");
    REQUIRE(prog.types.size() == 1);
    const auto& a = *prog.types[0].type;
    CHECK(a.kind == K::Unit);
    CHECK(a.binder == TimeVar{"t"});
    CHECK(a.pred == Prop::leq(TimeExpr::init(), TimeExpr::var("t")));
}

TEST_CASE("empty and comment-only files") {
    auto p = parse_program("");
    CHECK(p.types.empty());
    CHECK(p.procs.empty());
    CHECK(p.systems.empty());
    CHECK(parse_program("// nothing here\n\n").procs.empty());
}

TEST_CASE("keyless entry declarations") {
    auto p = support::load("keyless_entry.tsl");
    for (const char* n : {"CHALLENGE", "KEY", "CAR"}) CHECK(p.find_type(n) != nullptr);
    CHECK(p.find_proc("key") != nullptr);
    CHECK(p.find_proc("car") != nullptr);
    CHECK(p.find_type("KEY")->type->kind == K::Request);
    CHECK(p.find_proc("car")->body->kind == PK::Spawn);
}

TEST_CASE("parse errors carry a position and the expected tokens") {
    try {
        parse_program("type T = Unit<t where Leq<t0,t>>\nfn f() -> T {\n  Clsoe <t where True>\n}\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos.line == 3);
        CHECK(e.pos.column == 3);
        CHECK(e.expected.count("Close"));
        CHECK(e.found.find("Clsoe") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_program("type T = Unit<t where Leq<t0,t>"), ParseError);
    CHECK_THROWS_AS(parse_program("type T = Unit<t where Leq<t0,t>>\ntype T = Unit<t where True>"), UnknownName);
    CHECK_THROWS_AS(parse_program("fn f() -> MISSING { Close <t where True> }"), UnknownName);
}

TEST_CASE("type expansion") {
    auto p = support::load("smart_home.tsl");
    auto hub = expand_type_refs(p, ty::ref("HUB"));
    REQUIRE(hub->kind == K::Lolli);
    CHECK(hub->part(0).kind == K::ExChoice);
    CHECK(hub->part(0).part(1).kind == K::Produce);
    CHECK(hub->part(0).part(1).part(0).kind == K::Produce);
    REQUIRE(hub->part(1).kind == K::Lolli);
    const auto& prod = hub->part(1).part(1);
    REQUIRE(prod.kind == K::Produce);
    CHECK(prod.payload == ValueType::boolean());
    CHECK(prod.part(0).kind == K::Unit);

    std::function<bool(const SessionType&)> ref_free = [&](const SessionType& a) {
        if (a.kind == K::Ref) return false;
        for (const auto& c : a.parts)
            if (!ref_free(*c)) return false;
        return true;
    };
    CHECK(ref_free(*hub));

    auto plain = T("Unit<t where Leq<t0, t>>");
    CHECK(alpha_equal(*expand_type_refs(p, plain), *plain));

    // cycles are refused at load time and by direct expansion
    CHECK_THROWS_AS(parse_program("type X = Lolli<t where True, X, Unit<s where True>>"), CyclicTypeDef);
    CHECK_THROWS_AS(parse_program("type X = Tensor<t where True, Y, Unit<s where True>>\n"
                                  "type Y = Tensor<t where True, X, Unit<s where True>>"),
                    CyclicTypeDef);
    Program cyc;
    cyc.types.push_back({"X", ty::lolli(TimeVar{"t"}, Prop::top(), ty::ref("X"), ty::unit(TimeVar{"s"}, Prop::top())), {}});
    CHECK_THROWS_AS(expand_type_refs(cyc, ty::ref("X")), CyclicTypeDef);
}

TEST_CASE("urgency instantiation") {
    auto at = TimeExpr::init(4);
    auto u = urgency_instantiate(*T("Unit<t where Leq<t0, t>>"), at);
    CHECK(u.kind == K::Unit);
    CHECK(u.parts.empty());

    auto ten = T("Tensor<t where Leq<t0, t>, Unit<s where Leq<t, s>>, Unit<r where Eq<r, Shift<t, 1>>>>");
    auto ut = urgency_instantiate(*ten, at);
    REQUIRE(ut.kind == K::Tensor);
    REQUIRE(ut.parts.size() == 2);
    CHECK(alpha_equal(*ut.parts[0], *T("Unit<s where Leq<Shift<t0, 4>, s>>")));
    CHECK(alpha_equal(*ut.parts[1], *T("Unit<r where Eq<r, Shift<t0, 5>>>")));

    auto prod = T("Produce<int, t where True, Unit<s where Eq<s, t>>>");
    auto up = urgency_instantiate(*prod, at);
    CHECK(up.kind == K::Produce);
    CHECK(up.payload == ValueType::integer());
    CHECK(alpha_equal(*up.parts[0], *T("Unit<s where Eq<s, Shift<t0, 4>>>")));

    // instantiation commutes with substituting a free variable other than the binder
    auto open = T("Lolli<t where Leq<q, t>, Unit<s where Leq<t, s>>, Unit<r where Leq<Shift<q, 2>, r>>>");
    TimeVar q{"q"};
    auto by = TimeExpr::init(9);
    auto lhs = urgency_instantiate(*subst_time(open, q, by), at);
    auto rhs = urgency_instantiate(*open, at);
    for (std::size_t i = 0; i < 2; ++i) CHECK(alpha_equal(*lhs.parts[i], *subst_time(rhs.parts[i], q, by)));
}

TEST_CASE("free channels") {
    CHECK(free_channels(*pr::fwd(TimeExpr::init(), "x")) == std::set<std::string>{"x"});
    CHECK(free_channels(*pr::close(TimeVar{"t"}, Prop::top())).empty());

    auto p = support::load("smart_home.tsl");
    const auto& body = p.find_proc("hub")->body;
    CHECK(free_channels(*body).empty());
    REQUIRE(body->first);
    CHECK(free_channels(*body->first) == std::set<std::string>{"x"});
    CHECK(free_channels(*body->first->first) == std::set<std::string>{"x", "y"});

    // a bound name is not free, but the channel it receives on is
    auto rc = parse_process("RecvCh <t0> (x) { z => Wait <t0> (z); Fwd <t0> (w) }");
    CHECK(free_channels(*rc) == std::set<std::string>{"x", "w"});
}

TEST_CASE("substitutions") {
    TimeVar t{"t"}, tp{"t'"};
    auto c = pr::close(tp, Prop::eq(TimeExpr::var(tp), TimeExpr::var(t)));
    auto c2 = subst_time_in_process(c, t, TimeExpr::init(5));
    CHECK(same_process(c2, pr::close(tp, Prop::eq(TimeExpr::var(tp), TimeExpr::init(5)))));

    // capture: substituting t' for t under a t' binder renames the binder
    auto c3 = subst_time_in_process(c, t, TimeExpr::var(tp));
    CHECK(c3->binder != tp);
    CHECK(c3->pred == Prop::eq(TimeExpr::var(c3->binder), TimeExpr::var(tp)));

    auto w = pr::wait(TimeExpr::init(), "x", pr::fwd(TimeExpr::init(), "x"));
    auto w2 = subst_chan(w, "x", "a");
    CHECK(w2->chan == "a");
    CHECK(w2->first->chan == "a");

    auto body = pr::close(t, Prop::top());
    auto prod = pr::prod(t, Prop::top(), ex::binary(BinOp::Add, ex::var("u"), ex::lit(Value::integer(1))), body);
    auto prod2 = subst_val(prod, "u", Value::integer(2));
    CHECK(same_expr(*prod2->expr, *ex::binary(BinOp::Add, ex::lit(Value::integer(2)), ex::lit(Value::integer(1)))));

    // a Cons binder shadows the substituted value variable
    auto cons = parse_process("Cons <t0> (x) { u => Prod <t where True> $ u $; Close <s where True> }");
    CHECK(same_process(subst_val(cons, "u", Value::integer(7)), cons));
}

TEST_CASE("free channels after channel substitution") {
    for (const auto& f : corpus_files()) {
        auto p = support::load(f);
        for (const auto& d : p.procs) {
            auto fc = free_channels(*d.body);
            for (const auto& x : fc) {
                auto after = free_channels(*subst_chan(d.body, x, "zz_fresh"));
                auto want = fc;
                want.erase(x);
                want.insert("zz_fresh");
                CHECK_MESSAGE(after == want, f << ": " << d.name << " renaming " << x);
            }
            auto unused = free_channels(*subst_chan(d.body, "not_there", "zz_fresh"));
            CHECK(unused == fc);
        }
    }
}

TEST_CASE("print and parse round-trip every corpus file") {
    auto files = corpus_files();
    CHECK(files.size() >= 10);
    for (const auto& f : files) {
        auto p = support::load(f);
        auto text = print_program(p);
        auto q = parse_program(text);
        CHECK_MESSAGE(same_program(p, q), f);
        CHECK_MESSAGE(print_program(q) == text, f);
    }
}

TEST_CASE("alpha equality") {
    CHECK(alpha_equal(*T("Unit<t where Leq<t0, t>>"), *T("Unit<s where Leq<t0, s>>")));
    CHECK_FALSE(alpha_equal(*T("Unit<t where Leq<t0, t>>"), *T("Unit<s where Leq<s, t0>>")));
    CHECK(alpha_equal(*T("Produce<int, a where True, Unit<b where Leq<a, b>>>"),
                      *T("Produce<int, c where True, Unit<d where Leq<c, d>>>")));
    CHECK_FALSE(alpha_equal(*T("Produce<int, a where True, Unit<b where True>>"),
                            *T("Produce<bool, a where True, Unit<b where True>>")));
}

}
