#include <catch2/catch_amalgamated.hpp>

#include "gqw/formula.hpp"
#include "gqw/parser.hpp"
#include "gqw/printer.hpp"

#include "generators.hpp"

using namespace gqw;

TEST_CASE("parse: individual quantifier and negation") {
    Formula f = parse("forall x. ~P(x)");
    Formula expected = forall_ind("x", neg(atom("P", {"x"})));
    REQUIRE(f == expected);
}

TEST_CASE("parse: predicate quantifier over a quantifier-symbol atom") {
    Formula f = parse("forall P:1. Q(P)");
    REQUIRE(f == forall_pred("P", 1, qapp("Q", {"P"})));
}

TEST_CASE("parse: binder form with two slots") {
    Formula f = parse("I[x | P(x); y | R(y)]");
    Formula expected = qbind("I", {QBindPart{{"x"}, atom("P", {"x"})},
                                   QBindPart{{"y"}, atom("R", {"y"})}});
    REQUIRE(f == expected);
}

TEST_CASE("parse: biconditional desugars into two implications") {
    Formula f = parse("P & B -> S <-> S");
    Formula lhs = imp(conj(atom("P"), atom("B")), atom("S"));
    REQUIRE(f == conj(imp(lhs, atom("S")), imp(atom("S"), lhs)));
}

TEST_CASE("parse: precedence and associativity") {
    REQUIRE(parse("~P & B | S") == disj(conj(neg(atom("P")), atom("B")), atom("S")));
    REQUIRE(parse("P -> B -> S") == imp(atom("P"), imp(atom("B"), atom("S"))));
    REQUIRE(parse("P & B & S") == conj(conj(atom("P"), atom("B")), atom("S")));
}

TEST_CASE("parse: quantifier body extends maximally") {
    REQUIRE(parse("forall x. P(x) & B(x)") ==
            forall_ind("x", conj(atom("P", {"x"}), atom("B", {"x"}))));
}

TEST_CASE("parse: multi-variable binder tuples") {
    Formula f = parse("E2[x,y | R(x,y) & P(x)]");
    Formula expected =
        qbind("E2", {QBindPart{{"x", "y"}, conj(atom("R", {"x", "y"}), atom("P", {"x"}))}});
    REQUIRE(f == expected);
    REQUIRE(print(f) == "E2[x,y | R(x,y) & P(x)]");
    REQUIRE(parse(print(f)) == f);
}

TEST_CASE("parse: one formula per input") {
    REQUIRE_THROWS_AS(parse("P(x) Q(B)"), ParseError);
    REQUIRE_THROWS_AS(parse("P(x))"), ParseError);
}

TEST_CASE("parse: comments and whitespace are skipped") {
    Formula f = parse("# leading comment\n  forall x. # trailing\n  P(x)\n");
    REQUIRE(f == forall_ind("x", atom("P", {"x"})));
}

TEST_CASE("parse: syntax error carries a position") {
    try {
        parse("forall x. P(x) &");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(e.line == 1);
        REQUIRE(e.column >= 16);
    }
}

TEST_CASE("parse: arity mismatch is rejected") {
    REQUIRE_THROWS_AS(parse("forall P:2. P(x)"), ArityError);
    REQUIRE_THROWS_AS(parse("P(x) & P(x,y)"), ArityError);
}

TEST_CASE("parse: scope and identifier-class errors") {
    REQUIRE_THROWS_AS(parse("E[x,x | P(x)]"), ScopeError);
    REQUIRE_THROWS_AS(parse("forall x. x"), ParseError);
    REQUIRE_THROWS_AS(parse("P(Q,x)"), ParseError);
}

TEST_CASE("parse: equality is flag-gated") {
    REQUIRE_THROWS_AS(parse("x = y"), ParseError);
    ParseOptions opts;
    opts.allow_equality = true;
    REQUIRE(parse("x = y", opts) == equal("x", "y"));
    REQUIRE(parse("forall x. forall y. x = y -> P(x)", opts) ==
            forall_ind("x", forall_ind("y", imp(equal("x", "y"), atom("P", {"x"})))));
}

TEST_CASE("print: canonical renderings") {
    REQUIRE(print(forall_ind("x", atom("P", {"x"}))) == "forall x. P(x)");
    REQUIRE(print(qapp("Q", {"P"})) == "Q(P)");
    REQUIRE(print(atom("S")) == "S");
    REQUIRE(print(equal("x", "y")) == "x = y");
    REQUIRE(print(qbind("I", {QBindPart{{"x"}, atom("P", {"x"})},
                              QBindPart{{"y"}, atom("R", {"y"})}})) ==
            "I[x | P(x); y | R(y)]");
}

TEST_CASE("print: nested connectives are parenthesized and round-trip") {
    Formula f = disj(conj(atom("P"), atom("B")), conj(atom("S"), atom("P")));
    REQUIRE(print(f) == "(P & B) | (S & P)");
    REQUIRE(parse(print(f)) == f);
}

TEST_CASE("print: a quantified operand of a connective is parenthesized") {
    Formula e = exists_ind("x", atom("P", {"x"}));
    Formula f = disj(e, neg(e));
    REQUIRE(print(f) == "(exists x. P(x)) | ~(exists x. P(x))");
    REQUIRE(parse(print(f)) == f);
}

TEST_CASE("print: desugared biconditional prints as <->") {
    Formula f = parse("forall P:1. (Q(P) <-> exists x. P(x))");
    REQUIRE(print(f) == "forall P:1. (Q(P) <-> (exists x. P(x)))");
    REQUIRE(parse(print(f)) == f);
}

TEST_CASE("classify: fragment detection") {
    {
        FragmentInfo info = classify(parse("forall P:1. forall x. ~P(x)"));
        REQUIRE(info.fragment == Fragment::L2);
        REQUIRE_FALSE(info.has_polyadic_so_vars);
        REQUIRE(info.is_so_prenex);
        REQUIRE(info.so_prefix ==
                std::vector<std::pair<QuantKind, std::string>>{{QuantKind::Forall, "P"}});
    }
    {
        FragmentInfo info = classify(parse("forall P:1. (Q(P) <-> exists x. P(x))"));
        REQUIRE(info.fragment == Fragment::L2Q);
        REQUIRE_FALSE(info.has_polyadic_so_vars);
        REQUIRE(info.is_so_prenex);
    }
    {
        FragmentInfo info = classify(parse("forall x. exists R:2. R(x,x)"));
        REQUIRE(info.fragment == Fragment::L2);
        REQUIRE(info.has_polyadic_so_vars);
        REQUIRE_FALSE(info.is_so_prenex);
    }
    REQUIRE(classify(parse("forall x. P(x)")).fragment == Fragment::FO);
    REQUIRE(classify(parse("E[x | P(x)]")).fragment == Fragment::LQ);
}

TEST_CASE("classify: zero predicate quantifiers is trivially prenex") {
    REQUIRE(classify(parse("E[x | P(x)]")).is_so_prenex);
    REQUIRE(classify(parse("forall x. P(x) & B(x)")).is_so_prenex);
}

TEST_CASE("substitute_pred: the extraction substitution") {
    Formula f = parse("Q(P1)");
    REQUIRE(substitute_pred(f, "P1", "P") == parse("Q(P)"));
}

TEST_CASE("substitute_pred: absent variable leaves the formula untouched") {
    Formula f = parse("forall x. P(x)");
    REQUIRE(substitute_pred(f, "B", "P").ptr() == f.ptr());
}

TEST_CASE("substitute_pred: occurrences under a binder of the variable stay") {
    Formula f = parse("P(x) & (forall P:1. P(x))");
    Formula g = substitute_pred(f, "P", "B");
    REQUIRE(g == parse("B(x) & (forall P:1. P(x))"));
}

TEST_CASE("substitute_pred: identity substitution") {
    Formula f = parse("forall P:1. Q(P)");
    REQUIRE(substitute_pred(f, "P", "P") == f);
}

TEST_CASE("substitute_pred: arity disagreement is an error") {
    Formula f = parse("P(x) & R(x,y)");
    REQUIRE_THROWS_AS(substitute_pred(f, "P", "R"), ArityError);
}

TEST_CASE("property: parse/print round-trip on random formulas") {
    gen::Rng rng(20240817);
    gen::FormulaOptions opts;
    for (int i = 0; i < 400; ++i) {
        opts.equality = (i % 2) == 1;
        Formula f = gen::formula(rng, 1 + static_cast<int>(gen::pick(rng, 6)), opts);
        std::string text = print(f);
        ParseOptions popts;
        popts.allow_equality = opts.equality;
        INFO(text);
        Formula g = parse(text, popts);
        REQUIRE(g == f);
    }
}

TEST_CASE("property: classify is stable under a print/parse round-trip") {
    gen::Rng rng(7);
    gen::FormulaOptions opts;
    for (int i = 0; i < 200; ++i) {
        Formula f = gen::formula(rng, 1 + static_cast<int>(gen::pick(rng, 6)), opts);
        Formula g = parse(print(f));
        FragmentInfo a = classify(f), b = classify(g);
        REQUIRE(a.fragment == b.fragment);
        REQUIRE(a.has_polyadic_so_vars == b.has_polyadic_so_vars);
        REQUIRE(a.is_so_prenex == b.is_so_prenex);
        REQUIRE(a.so_prefix == b.so_prefix);
    }
}
