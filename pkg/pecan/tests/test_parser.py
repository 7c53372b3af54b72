"""Tests for the source parser"""

import pytest

from pecan.errors import PecanSyntaxError
from pecan.syntax.ast import (
    Add,
    And,
    BuiltinDecl,
    Call,
    Equal,
    Exists,
    Factor,
    FalseP,
    Forall,
    FuncCall,
    Iff,
    Implies,
    IntLit,
    Less,
    LessEq,
    LoadAutomaton,
    Mul,
    Not,
    Or,
    Param,
    PredicateDef,
    RestrictDecl,
    SaveAutomaton,
    StructureDecl,
    Sub,
    TemplateEntry,
    TheoremDecl,
    TrueP,
    TypeTag,
    Var,
    WordIndex,
)
from pecan.syntax.parser import parse, parse_formula

NAT = TypeTag("nat")
x, y, z = Var("x"), Var("y"), Var("z")

EXAMPLE = """
// addition is commutative
Structure nat defining {
    "adder": bin_add(any, any, any),
    "less": bin_less(any, any)
}.
Restrict a, b are nat.
Theorem ("", { forall a,b. a < b <=> bin_less(a,b)}).
"""


class TestFormulas:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("x < y", Less(x, y)),
            ("x > y", Less(y, x)),
            ("x <= y", LessEq(x, y)),
            ("x >= y", LessEq(y, x)),
            ("x = y", Equal(x, y)),
            ("x != 1", Not(Equal(x, IntLit(1)))),
            ("x + y - z = 0", Equal(Sub(Add(x, y), z), IntLit(0))),
            ("2*x = y", Equal(Mul(2, x), y)),
            ("true & !false", And(TrueP(), Not(FalseP()))),
        ],
    )
    def test_relations_and_constants(self, text, expected):
        assert parse_formula(text) == expected

    def test_precedence(self):
        p, q, r = Call("P", (x,)), Call("Q", (x,)), Call("R", (x,))
        assert parse_formula("P(x) | Q(x) & R(x)") == Or(p, And(q, r))
        assert parse_formula("P(x) => Q(x) => R(x)") == Implies(p, Implies(q, r))
        assert parse_formula("P(x) <=> Q(x) | R(x)") == Iff(p, Or(q, r))
        assert parse_formula("if P(x) then Q(x)") == Implies(p, q)

    def test_binders_nest_left_to_right(self):
        expected = Forall("a", NAT, Forall("b", NAT, Less(Var("a"), Var("b"))))
        assert parse_formula("forall a, b are nat. a < b") == expected

    def test_untyped_and_parametric_binders(self):
        assert parse_formula("exists x. x = y") == Exists("x", None, Equal(x, y))
        typed = parse_formula("exists i is ostrowski(a). i = i")
        assert typed.type_tag == TypeTag("ostrowski", ("a",))

    def test_calls_in_expression_position_are_functions(self):
        assert parse_formula("f(x) = y") == Equal(FuncCall("f", (x,)), y)
        assert parse_formula("P(x, y)") == Call("P", (x, y))

    def test_word_indexing(self):
        assert parse_formula("T[i] = 1") == Equal(WordIndex("T", Var("i")), IntLit(1))
        assert parse_formula("T[i..j] = T[k..l]") == Equal(
            Factor("T", Var("i"), Var("j")), Factor("T", Var("k"), Var("l"))
        )

    def test_primed_and_dollar_names(self):
        assert parse_formula("x' = $y") == Equal(Var("x'"), Var("$y"))


class TestPrograms:
    def test_commutativity_example(self):
        structure, restrict, theorem = parse(EXAMPLE).items
        assert structure == StructureDecl(
            NAT,
            (
                ("adder", TemplateEntry("bin_add", ("any", "any", "any"))),
                ("less", TemplateEntry("bin_less", ("any", "any"))),
            ),
        )
        assert restrict == RestrictDecl(("a", "b"), NAT)
        assert isinstance(theorem, TheoremDecl) and theorem.name == ""
        assert isinstance(theorem.body, Forall)

    def test_lines_are_recorded(self):
        items = parse(EXAMPLE).items
        assert [item.line for item in items] == [3, 7, 8]

    def test_definitions(self):
        (pdef,) = parse("double(x is nat, y) := y = x + x.").items
        assert pdef == PredicateDef(
            "double", (Param("x", NAT), Param("y")), Equal(y, Add(x, x))
        )
        (bare,) = parse("always() := true").items
        assert bare.arity == 0

    def test_directives(self):
        load, save, builtin = parse(
            '#load "adder.aut" as adder(x, y, z).\n'
            '#save_aut "double.aut" double.\n'
            '#builtin "thue_morse" as T(i).\n'
        ).items
        assert load == LoadAutomaton("adder.aut", "adder", ("x", "y", "z"))
        assert save == SaveAutomaton("double.aut", "double")
        assert builtin == BuiltinDecl("thue_morse", "T", ("i",))

    def test_string_escapes(self):
        (theorem,) = parse('Theorem ("say \\"hi\\" é", { true }).').items
        assert theorem.name == 'say "hi" é'

    def test_empty_program(self):
        assert len(parse("// nothing here\n")) == 0


class TestErrors:
    def test_unknown_directive(self):
        with pytest.raises(PecanSyntaxError, match="unknown directive #define"):
            parse("#define x.")

    def test_unterminated_theorem(self):
        with pytest.raises(PecanSyntaxError, match="unterminated"):
            parse('Theorem ("open", { true ')

    def test_repeated_parameter(self):
        with pytest.raises(PecanSyntaxError, match="Repeated parameter"):
            parse("P(x, x) := true.")

    def test_location_names_the_file(self):
        with pytest.raises(PecanSyntaxError) as raised:
            parse("P(x) := x <.", path="broken.pn")
        assert str(raised.value).startswith("broken.pn:1")

    def test_predicate_where_expression_expected(self):
        with pytest.raises(PecanSyntaxError):
            parse_formula("(x < y) + 1 = z")
