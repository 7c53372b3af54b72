"""Tests for types, structures and call resolution"""

import pytest

from pecan.errors import (
    ArityError,
    OpenFormulaError,
    PecanTypeError,
    ResolutionError,
    UnknownPredicateError,
    UnknownVariableError,
)
from pecan.syntax.ast import (
    Add,
    Call,
    Equal,
    Exists,
    FuncCall,
    IntLit,
    Less,
    Param,
    PredicateDef,
    StructureDecl,
    TemplateEntry,
    TrueP,
    TypeTag,
    Var,
)
from pecan.typecheck import (
    CallTemplate,
    Registry,
    StructureDef,
    TypeEnv,
    check_definition,
    check_prop,
    check_theorem,
    resolve_call,
    template_implicits,
    template_params,
    type_expr,
)

NAT = TypeTag("nat")
x, y, z = Var("x"), Var("y"), Var("z")


def declare(registry: Registry, name: str, *params: str) -> None:
    registry.define(PredicateDef(name, tuple(Param(param) for param in params), TrueP()))


def numeration(registry: Registry, name: str) -> None:
    """A structure name(s) whose adder and less take the parameter first"""
    declare(registry, name, "s", "x")
    declare(registry, f"{name}_add", "s", "x", "y", "z")
    declare(registry, f"{name}_less", "s", "x", "y")
    registry.add_structure(
        StructureDecl(
            TypeTag(name, ("s",)),
            (
                ("adder", TemplateEntry(f"{name}_add", ("s", "any", "any", "any"))),
                ("less", TemplateEntry(f"{name}_less", ("s", "any", "any"))),
            ),
        )
    )


@pytest.fixture
def registry() -> Registry:
    fresh = Registry()
    numeration(fresh, "ost")
    numeration(fresh, "base")
    return fresh


class TestTemplates:
    def test_star_and_implicit_positions(self):
        template = CallTemplate("ost_add", ("s", "any", "any", "any"))
        assert template_params(template) == [2, 3, 4]
        assert template_implicits(template) == [1]

    def test_slots_must_be_parameters(self):
        with pytest.raises(PecanTypeError, match="not one of its parameters"):
            StructureDef("ost", ("s",), {"adder": CallTemplate("ost_add", ("t", "any"))})

    def test_numeric_structures(self, registry):
        assert registry.structures["ost"].is_numeric
        assert not StructureDef("word").is_numeric

    def test_template_arity_checked_against_target(self, registry):
        declare(registry, "pair", "x", "y")
        decl = StructureDecl(TypeTag("pair"), (("less", TemplateEntry("pair", ("any",))),))
        with pytest.raises(ArityError):
            registry.add_structure(decl)

    def test_redefinition_bumps_generation(self, registry):
        before = registry.generation
        declare(registry, "ost", "s", "x")
        assert registry.generation == before + 1


class TestResolution:
    def test_parameters_fill_implicit_slots(self, registry):
        tag = TypeTag("ost", ("alpha",))
        resolved = resolve_call(registry, "adder", [tag] * 3, (x, y, z))
        assert resolved.target == "ost_add"
        assert resolved.args == (Var("alpha"), x, y, z)

    def test_untyped_arguments_do_not_participate(self, registry):
        tag = TypeTag("ost", ("alpha",))
        resolved = resolve_call(registry, "less", [None, tag], (x, y))
        assert resolved.args == (Var("alpha"), x, y)

    def test_no_structure_resolves_to_itself(self, registry):
        resolved = resolve_call(registry, "double", [TypeTag("ost", ("a",))], (x,))
        assert resolved.target == "double" and resolved.args == (x,)

    def test_ambiguous_call(self, registry):
        tags = [TypeTag("ost", ("a",)), TypeTag("base", ("b",))]
        with pytest.raises(ResolutionError, match="Ambiguous"):
            resolve_call(registry, "less", tags, (x, y))

    def test_wrong_number_of_arguments(self, registry):
        tag = TypeTag("ost", ("a",))
        with pytest.raises(ArityError):
            resolve_call(registry, "adder", [tag, tag], (x, y))

    def test_type_arguments_match_structure_parameters(self, registry):
        with pytest.raises(ArityError):
            resolve_call(registry, "less", [TypeTag("ost")] * 2, (x, y))


class TestEnvironments:
    def test_later_bindings_shadow(self):
        gamma = TypeEnv.of({"x": NAT}).bind("x", None)
        assert gamma.lookup("x") is None
        assert gamma.names == {"x"}

    def test_unbound(self):
        with pytest.raises(UnknownVariableError):
            TypeEnv().lookup("x")


class TestChecks:
    def test_expression_types(self, session):
        gamma = TypeEnv.of({"x": NAT})
        typed = type_expr(session.registry, gamma, Add(x, IntLit(1)))
        assert typed.type_tag == NAT
        assert typed.right.type_tag == NAT

    def test_literals_need_context(self, session):
        with pytest.raises(PecanTypeError):
            check_prop(session.registry, TypeEnv(), Equal(IntLit(1), IntLit(2)))

    def test_untyped_variables_compare_by_tracks(self, session):
        gamma = TypeEnv.of({"x": None, "y": None})
        assert check_prop(session.registry, gamma, Equal(x, y)) == Equal(x, y)
        with pytest.raises(PecanTypeError, match="numeric"):
            check_prop(session.registry, gamma, Less(x, y))

    def test_unknown_variable(self, session):
        with pytest.raises(UnknownVariableError):
            check_prop(session.registry, TypeEnv.of({"x": NAT}), Equal(x, y))

    def test_structure_operations_resolve(self, session):
        gamma = TypeEnv.of({"x": NAT, "y": NAT, "z": NAT})
        checked = check_prop(session.registry, gamma, Call("adder", (x, y, z)))
        assert checked == Call("bin_add", (x, y, z))

    def test_function_calls(self, session):
        session.run_text("succ(x, y) := y = x + 1.")
        a, b = Var("a"), Var("b")
        gamma = TypeEnv.of({"a": NAT, "b": NAT})
        checked = check_prop(session.registry, gamma, Equal(FuncCall("succ", (a,)), b))
        assert checked.left.type_tag == NAT

    def test_call_arity(self, session):
        gamma = TypeEnv.of({"x": NAT})
        with pytest.raises(ArityError):
            check_prop(session.registry, gamma, Call("bin_less", (x,)))

    def test_unknown_predicate(self, session):
        with pytest.raises(UnknownPredicateError):
            check_prop(session.registry, TypeEnv.of({"x": NAT}), Call("nope", (x,)))

    def test_quantifier_types_are_checked(self, session):
        with pytest.raises(ArityError):
            check_prop(session.registry, TypeEnv(), Exists("x", TypeTag("bin_add"), TrueP()))

    def test_recursion_rejected(self, session):
        session.run_text("Q(x) := true.\nP(x) := Q(x).")
        with pytest.raises(PecanTypeError, match="Recursive"):
            session.run_text("Q(x) := P(x).")

    def test_definitions_collect_calls(self, session):
        pdef = PredicateDef("lt", (Param("x", NAT), Param("y", NAT)), Less(x, y))
        checked, calls = check_definition(session.registry, pdef)
        assert calls == {"nat", "bin_less"}
        assert checked.body.left.type_tag == NAT

    def test_theorems_are_closed(self, session):
        with pytest.raises(OpenFormulaError):
            check_theorem(session.registry, Less(x, y))
