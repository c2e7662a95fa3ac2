"""Rota-Baxter and relative (O-) operator witnesses, their verification, and
every induced-structure constructor: dendrification of single operators, of
commuting pairs, and of Hessian bilinear forms.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import (
    DimensionMismatch,
    Matrix,
    Svec,
    Tensor,
    apply_cols,
    as_fraction,
    grid_mul,
    mat_cols,
    mat_inverse,
    mat_kernel_vector,
    mat_lincomb,
    mat_mul,
    mat_shape,
    mat_sub,
    mat_transpose,
    matrix,
    push_product,
    sv_add,
    sv_scale,
    sv_sub,
    tensor_commutator,
    tensor_from_entries,
    tensor_grid,
)
from .reps import (
    ActionRole,
    MALCEV_ACTIONS,
    PRE_ALTERNATIVE_ACTIONS,
    PRE_MALCEV_ACTIONS,
    Representation,
)
from .structures import (
    CheckReport,
    HomStructure,
    ProductRole,
    RoleMismatch,
    UnknownKind,
    Violation,
    check_morphism,
    make_structure,
)


class OperatorInvalid(ValueError):
    """A construction was asked to use an operator that fails its own check."""


class NotCommuting(ValueError):
    """A pair construction needs the two operators to commute."""


class HessianInvalid(ValueError):
    """A dendrification was asked to use a bilinear form that fails the
    Hessian axioms."""


class EndomorphismInvalid(ValueError):
    """The map pair does not satisfy the operator-endomorphism conditions."""


KIND_ROTA_BAXTER = "rota-baxter"
KIND_O_OPERATOR = "o-operator"
OPERATOR_KINDS = (KIND_ROTA_BAXTER, KIND_O_OPERATOR)


@dataclass(frozen=True)
class OperatorWitness:
    """A Rota-Baxter map on the algebra, or a module-to-algebra map relative
    to a representation."""

    kind: str
    matrix: Matrix
    weight: Fraction | None = None
    rep: Representation | None = None

    def __post_init__(self):
        if self.kind not in OPERATOR_KINDS:
            raise UnknownKind(
                f"unknown operator kind {self.kind!r}; expected one of {OPERATOR_KINDS}"
            )
        mat = matrix(self.matrix)
        object.__setattr__(self, "matrix", mat)
        if self.kind == KIND_ROTA_BAXTER:
            if self.rep is not None:
                raise RoleMismatch("a Rota-Baxter witness carries no representation")
            rows, cols = mat_shape(mat)
            if rows != cols:
                raise DimensionMismatch(
                    f"a Rota-Baxter map must be square, got {rows}x{cols}"
                )
            weight = as_fraction(self.weight) if self.weight is not None else Fraction(0)
            object.__setattr__(self, "weight", weight)
        else:
            if self.weight is not None:
                raise RoleMismatch("a relative operator witness carries no weight")
            if self.rep is None:
                raise RoleMismatch("a relative operator witness needs a representation")
            want = (self.rep.base.dim, self.rep.module_dim)
            if mat_shape(mat) != want:
                raise DimensionMismatch(
                    f"operator map must be {want[0]}x{want[1]} (module to algebra), "
                    f"got {mat_shape(mat)}"
                )


@dataclass(frozen=True)
class BilinearForm:
    """A square rational matrix read as a bilinear form on the algebra."""

    matrix: Matrix

    def __post_init__(self):
        mat = matrix(self.matrix)
        rows, cols = mat_shape(mat)
        if rows != cols:
            raise DimensionMismatch(f"a bilinear form must be square, got {rows}x{cols}")
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return mat_shape(self.matrix)[0]


# ---------------------------------------------------------------------------
# operator verification
# ---------------------------------------------------------------------------

def _finish(target: str, violations: list[Violation], total: int,
            start: float) -> CheckReport:
    violations.sort(key=lambda v: (v.identity, v.args))
    return CheckReport(
        target=target,
        passed=not violations,
        violations=tuple(violations),
        tuples_checked=total,
        elapsed=time.perf_counter() - start,
    )


def _check_rota_baxter(structure: HomStructure, w: OperatorWitness,
                       start: float) -> CheckReport:
    n = structure.dim
    if mat_shape(w.matrix) != (n, n):
        raise DimensionMismatch(
            f"operator is {mat_shape(w.matrix)[0]}x{mat_shape(w.matrix)[1]} "
            f"but the structure has dimension {n}"
        )
    rcols = mat_cols(w.matrix)
    lam = w.weight
    violations: list[Violation] = []
    total = 0
    for role in sorted(structure.products, key=lambda r: r.value):
        grid = tensor_grid(structure.products[role], n)
        label = f"RB-{role.value}"
        for i in range(n):
            ri = rcols[i]
            for j in range(n):
                total += 1
                rj = rcols[j]
                ej = {j: Fraction(1)}
                ei = {i: Fraction(1)}
                inner = sv_add(grid_mul(grid, ri, ej), grid_mul(grid, ei, rj))
                if lam:
                    inner = sv_add(inner, sv_scale(lam, grid_mul(grid, ei, ej)))
                residual = sv_sub(grid_mul(grid, ri, rj), apply_cols(rcols, inner))
                if residual:
                    violations.append(Violation(label, (i, j), residual))
    acols = mat_cols(structure.twist)
    for i in range(n):
        total += 1
        residual = sv_sub(apply_cols(acols, rcols[i]), apply_cols(rcols, acols[i]))
        if residual:
            violations.append(Violation("RB-TWIST", (i,), residual))
    return _finish(f"operator:{w.kind}", violations, total, start)


def _oop_identities(structure: HomStructure, rep: Representation):
    """Pairs of (label, residual function over module basis pairs)."""
    n, m = structure.dim, rep.module_dim
    roles = rep.roles()

    def act(slices: Sequence[Matrix], coeffs: Svec, b: int) -> Svec:
        mat = mat_lincomb(coeffs, slices, m, m)
        return {r: mat[r][b] for r in range(m) if mat[r][b]}

    out = []
    if roles == MALCEV_ACTIONS:
        if ProductRole.BRACKET not in structure.products:
            raise RoleMismatch("a rho-action operator check needs the bracket role")
        grid = tensor_grid(structure.products[ProductRole.BRACKET], n)
        rho = rep.actions[ActionRole.RHO]

        def bracket_res(tcols, a, b):
            lhs = grid_mul(grid, tcols[a], tcols[b])
            inner = sv_sub(act(rho, tcols[a], b), act(rho, tcols[b], a))
            return sv_sub(lhs, apply_cols(tcols, inner))

        out.append(("OOP-bracket", bracket_res))
    elif roles == PRE_MALCEV_ACTIONS:
        ell = rep.actions[ActionRole.LEFT]
        arr = rep.actions[ActionRole.RIGHT]
        found = False
        for role in (ProductRole.DOT, ProductRole.STAR):
            if role not in structure.products:
                continue
            found = True
            grid = tensor_grid(structure.products[role], n)

            def res(tcols, a, b, grid=grid):
                lhs = grid_mul(grid, tcols[a], tcols[b])
                inner = sv_add(act(ell, tcols[a], b), act(arr, tcols[b], a))
                return sv_sub(lhs, apply_cols(tcols, inner))

            out.append((f"OOP-{role.value}", res))
        if not found:
            raise RoleMismatch(
                "a left/right-action operator check needs the dot or star role"
            )
    elif roles == PRE_ALTERNATIVE_ACTIONS:
        if not {ProductRole.PREC, ProductRole.SUCC} <= structure.roles():
            raise RoleMismatch(
                "a split-action operator check needs the prec and succ roles"
            )
        for role, left_role, right_role in (
            (ProductRole.PREC, ActionRole.LEFT_PREC, ActionRole.RIGHT_PREC),
            (ProductRole.SUCC, ActionRole.LEFT_SUCC, ActionRole.RIGHT_SUCC),
        ):
            grid = tensor_grid(structure.products[role], n)
            left = rep.actions[left_role]
            right = rep.actions[right_role]

            def res(tcols, a, b, grid=grid, left=left, right=right):
                lhs = grid_mul(grid, tcols[a], tcols[b])
                inner = sv_add(act(left, tcols[a], b), act(right, tcols[b], a))
                return sv_sub(lhs, apply_cols(tcols, inner))

            out.append((f"OOP-{role.value}", res))
    else:
        raise RoleMismatch(
            f"no operator identity for action roles {sorted(r.value for r in roles)}"
        )
    return out


def _check_o_operator(structure: HomStructure, w: OperatorWitness,
                      start: float) -> CheckReport:
    rep = w.rep
    assert rep is not None
    n, m = structure.dim, rep.module_dim
    if rep.base.dim != n:
        raise DimensionMismatch(
            f"representation base has dimension {rep.base.dim}, structure {n}"
        )
    tcols = mat_cols(w.matrix)
    violations: list[Violation] = []
    total = 0
    intertwine = mat_sub(mat_mul(structure.twist, w.matrix),
                         mat_mul(w.matrix, rep.module_twist))
    for b in range(m):
        total += 1
        col = {r: intertwine[r][b] for r in range(n) if intertwine[r][b]}
        if col:
            violations.append(Violation("OOP-TWIST", (b,), col))
    for label, res in _oop_identities(structure, rep):
        for a in range(m):
            for b in range(m):
                total += 1
                residual = res(tcols, a, b)
                if residual:
                    violations.append(Violation(label, (a, b), residual))
    return _finish(f"operator:{w.kind}", violations, total, start)


def check_operator(structure: HomStructure, w: OperatorWitness) -> CheckReport:
    """Verify the defining identities of the witness against every stored
    product (Rota-Baxter) or against its representation's actions (relative
    operator), always including the twist-intertwining law."""
    start = time.perf_counter()
    if w.kind == KIND_ROTA_BAXTER:
        return _check_rota_baxter(structure, w, start)
    return _check_o_operator(structure, w, start)


def check_commuting(r1: OperatorWitness, r2: OperatorWitness) -> bool:
    """True exactly when the two Rota-Baxter maps commute as matrices."""
    if r1.kind != KIND_ROTA_BAXTER or r2.kind != KIND_ROTA_BAXTER:
        raise RoleMismatch("commutation is checked between two Rota-Baxter witnesses")
    if mat_shape(r1.matrix) != mat_shape(r2.matrix):
        raise DimensionMismatch(
            f"operators have shapes {mat_shape(r1.matrix)} and {mat_shape(r2.matrix)}"
        )
    return mat_mul(r1.matrix, r2.matrix) == mat_mul(r2.matrix, r1.matrix)


# ---------------------------------------------------------------------------
# induced structures (dendrification)
# ---------------------------------------------------------------------------

def _require_valid(structure: HomStructure, w: OperatorWitness,
                   recipe: str) -> None:
    rep = check_operator(structure, w)
    if not rep.passed:
        first = rep.violations[0]
        raise OperatorInvalid(
            f"operator fails its check; recipe {recipe!r} refused "
            f"(first violation {first.identity} at {first.args})"
        )


def _require_rb(w: OperatorWitness, recipe: str) -> None:
    if w.kind != KIND_ROTA_BAXTER:
        raise RoleMismatch(f"recipe {recipe!r} needs a Rota-Baxter witness")
    if w.weight != 0:
        raise OperatorInvalid(f"recipe {recipe!r} needs weight zero, got {w.weight}")


def _require_oop(w: OperatorWitness, recipe: str,
                 roles: frozenset[ActionRole]) -> Representation:
    if w.kind != KIND_O_OPERATOR:
        raise RoleMismatch(f"recipe {recipe!r} needs a relative operator witness")
    assert w.rep is not None
    if w.rep.roles() != roles:
        raise RoleMismatch(
            f"recipe {recipe!r} needs actions {sorted(r.value for r in roles)}; "
            f"witness representation has {sorted(r.value for r in w.rep.roles())}"
        )
    return w.rep


def _require_roles(structure: HomStructure, roles: Sequence[ProductRole],
                   recipe: str) -> None:
    missing = [r.value for r in roles if r not in structure.products]
    if missing:
        raise RoleMismatch(f"recipe {recipe!r} needs structure products {missing}")


def _grid(structure: HomStructure, role: ProductRole):
    return tensor_grid(structure.products[role], structure.dim)


def _tensor_from_fn(dim: int, fn) -> Tensor:
    entries = []
    for i in range(dim):
        for j in range(dim):
            for k, v in fn(i, j).items():
                entries.append((i, j, k, v))
    return tensor_from_entries(entries)


def _module_structure(rep: Representation, products: Mapping[ProductRole, Tensor],
                      recipe: str) -> HomStructure:
    return make_structure(
        dim=rep.module_dim, twist=rep.module_twist, products=products,
        meta={"construction": recipe},
    )


def _carrier_structure(structure: HomStructure,
                       products: Mapping[ProductRole, Tensor],
                       recipe: str) -> HomStructure:
    return make_structure(
        dim=structure.dim, twist=structure.twist, products=products,
        basis=structure.basis, meta={"construction": recipe},
    )


def _act_col(slices: Sequence[Matrix], coeffs: Svec, b: int, m: int) -> Svec:
    mat = mat_lincomb(coeffs, slices, m, m)
    return {r: mat[r][b] for r in range(m) if mat[r][b]}


def _induce_malcev_to_premalcev_oop(structure, w):
    rep = _require_oop(w, "malcev-to-premalcev-oop", MALCEV_ACTIONS)
    _require_roles(structure, [ProductRole.BRACKET], "malcev-to-premalcev-oop")
    _require_valid(structure, w, "malcev-to-premalcev-oop")
    tcols = mat_cols(w.matrix)
    rho = rep.actions[ActionRole.RHO]
    m = rep.module_dim
    dot = _tensor_from_fn(m, lambda a, b: _act_col(rho, tcols[a], b, m))
    return _module_structure(rep, {ProductRole.DOT: dot}, "malcev-to-premalcev-oop")


def _induce_malcev_to_premalcev_rb(structure, w):
    _require_rb(w, "malcev-to-premalcev-rb")
    _require_roles(structure, [ProductRole.BRACKET], "malcev-to-premalcev-rb")
    _require_valid(structure, w, "malcev-to-premalcev-rb")
    grid = _grid(structure, ProductRole.BRACKET)
    rcols = mat_cols(w.matrix)
    dot = _tensor_from_fn(
        structure.dim, lambda i, j: grid_mul(grid, rcols[i], {j: Fraction(1)})
    )
    return _carrier_structure(structure, {ProductRole.DOT: dot},
                              "malcev-to-premalcev-rb")


def _induce_premalcev_to_mdendriform_oop(structure, w):
    rep = _require_oop(w, "premalcev-to-mdendriform-oop", PRE_MALCEV_ACTIONS)
    _require_roles(structure, [ProductRole.DOT], "premalcev-to-mdendriform-oop")
    _require_valid(structure, w, "premalcev-to-mdendriform-oop")
    tcols = mat_cols(w.matrix)
    ell = rep.actions[ActionRole.LEFT]
    arr = rep.actions[ActionRole.RIGHT]
    m = rep.module_dim
    tr = _tensor_from_fn(m, lambda a, b: _act_col(arr, tcols[b], a, m))
    tl = _tensor_from_fn(m, lambda a, b: _act_col(ell, tcols[a], b, m))
    return _module_structure(rep, {ProductRole.TRI_RIGHT: tr, ProductRole.TRI_LEFT: tl},
                             "premalcev-to-mdendriform-oop")


def _induce_premalcev_to_mdendriform_rb(structure, w):
    _require_rb(w, "premalcev-to-mdendriform-rb")
    _require_roles(structure, [ProductRole.DOT], "premalcev-to-mdendriform-rb")
    _require_valid(structure, w, "premalcev-to-mdendriform-rb")
    grid = _grid(structure, ProductRole.DOT)
    rcols = mat_cols(w.matrix)
    tr = _tensor_from_fn(
        structure.dim, lambda i, j: grid_mul(grid, {i: Fraction(1)}, rcols[j])
    )
    tl = _tensor_from_fn(
        structure.dim, lambda i, j: grid_mul(grid, rcols[i], {j: Fraction(1)})
    )
    return _carrier_structure(structure,
                              {ProductRole.TRI_RIGHT: tr, ProductRole.TRI_LEFT: tl},
                              "premalcev-to-mdendriform-rb")


def _induce_premalcev_compatible_dendriform(structure, w):
    recipe = "premalcev-compatible-dendriform"
    rep = _require_oop(w, recipe, PRE_MALCEV_ACTIONS)
    _require_roles(structure, [ProductRole.DOT], recipe)
    if rep.module_dim != structure.dim:
        raise DimensionMismatch(
            "an invertible operator needs the module and algebra dimensions equal"
        )
    t_inv = mat_inverse(w.matrix)  # SingularMatrix when not invertible
    _require_valid(structure, w, recipe)
    ell = rep.actions[ActionRole.LEFT]
    arr = rep.actions[ActionRole.RIGHT]
    n = structure.dim
    ticols = mat_cols(t_inv)
    tcols = mat_cols(w.matrix)

    def tr_fn(i, j):
        # x > y = T(r(y) T^-1(x))
        vec = apply_cols(mat_cols(arr[j]), ticols[i])
        return apply_cols(tcols, vec)

    def tl_fn(i, j):
        # x < y = T(l(x) T^-1(y))
        vec = apply_cols(mat_cols(ell[i]), ticols[j])
        return apply_cols(tcols, vec)

    tr = _tensor_from_fn(n, tr_fn)
    tl = _tensor_from_fn(n, tl_fn)
    return _carrier_structure(structure,
                              {ProductRole.TRI_RIGHT: tr, ProductRole.TRI_LEFT: tl},
                              recipe)


def _induce_alternative_to_prealt_oop(structure, w):
    recipe = "alternative-to-prealt-oop"
    rep = _require_oop(w, recipe, PRE_MALCEV_ACTIONS)
    _require_roles(structure, [ProductRole.STAR], recipe)
    _require_valid(structure, w, recipe)
    tcols = mat_cols(w.matrix)
    ell = rep.actions[ActionRole.LEFT]
    arr = rep.actions[ActionRole.RIGHT]
    m = rep.module_dim
    succ = _tensor_from_fn(m, lambda a, b: _act_col(ell, tcols[a], b, m))
    prec = _tensor_from_fn(m, lambda a, b: _act_col(arr, tcols[b], a, m))
    return _module_structure(rep, {ProductRole.PREC: prec, ProductRole.SUCC: succ},
                             recipe)


def _induce_alternative_to_prealt_rb(structure, w):
    recipe = "alternative-to-prealt-rb"
    _require_rb(w, recipe)
    _require_roles(structure, [ProductRole.STAR], recipe)
    _require_valid(structure, w, recipe)
    grid = _grid(structure, ProductRole.STAR)
    rcols = mat_cols(w.matrix)
    prec = _tensor_from_fn(
        structure.dim, lambda i, j: grid_mul(grid, {i: Fraction(1)}, rcols[j])
    )
    succ = _tensor_from_fn(
        structure.dim, lambda i, j: grid_mul(grid, rcols[i], {j: Fraction(1)})
    )
    return _carrier_structure(structure,
                              {ProductRole.PREC: prec, ProductRole.SUCC: succ}, recipe)


def _induce_prealt_to_quadri_oop(structure, w):
    recipe = "prealt-to-quadri-oop"
    rep = _require_oop(w, recipe, PRE_ALTERNATIVE_ACTIONS)
    _require_roles(structure, [ProductRole.PREC, ProductRole.SUCC], recipe)
    _require_valid(structure, w, recipe)
    tcols = mat_cols(w.matrix)
    m = rep.module_dim
    lp = rep.actions[ActionRole.LEFT_PREC]
    rp = rep.actions[ActionRole.RIGHT_PREC]
    ls = rep.actions[ActionRole.LEFT_SUCC]
    rs = rep.actions[ActionRole.RIGHT_SUCC]
    products = {
        ProductRole.SE: _tensor_from_fn(m, lambda a, b: _act_col(ls, tcols[a], b, m)),
        ProductRole.NE: _tensor_from_fn(m, lambda a, b: _act_col(rs, tcols[b], a, m)),
        ProductRole.SW: _tensor_from_fn(m, lambda a, b: _act_col(lp, tcols[a], b, m)),
        ProductRole.NW: _tensor_from_fn(m, lambda a, b: _act_col(rp, tcols[b], a, m)),
    }
    return _module_structure(rep, products, recipe)


def _induce_prealt_to_quadri_rb(structure, w):
    recipe = "prealt-to-quadri-rb"
    _require_rb(w, recipe)
    _require_roles(structure, [ProductRole.PREC, ProductRole.SUCC], recipe)
    _require_valid(structure, w, recipe)
    pgrid = _grid(structure, ProductRole.PREC)
    sgrid = _grid(structure, ProductRole.SUCC)
    rcols = mat_cols(w.matrix)
    n = structure.dim
    products = {
        ProductRole.NE: _tensor_from_fn(
            n, lambda i, j: grid_mul(sgrid, {i: Fraction(1)}, rcols[j])),
        ProductRole.SE: _tensor_from_fn(
            n, lambda i, j: grid_mul(sgrid, rcols[i], {j: Fraction(1)})),
        ProductRole.SW: _tensor_from_fn(
            n, lambda i, j: grid_mul(pgrid, rcols[i], {j: Fraction(1)})),
        ProductRole.NW: _tensor_from_fn(
            n, lambda i, j: grid_mul(pgrid, {i: Fraction(1)}, rcols[j])),
    }
    return _carrier_structure(structure, products, recipe)


_INDUCE_RECIPES = {
    "malcev-to-premalcev-oop": _induce_malcev_to_premalcev_oop,
    "malcev-to-premalcev-rb": _induce_malcev_to_premalcev_rb,
    "premalcev-to-mdendriform-oop": _induce_premalcev_to_mdendriform_oop,
    "premalcev-to-mdendriform-rb": _induce_premalcev_to_mdendriform_rb,
    "premalcev-compatible-dendriform": _induce_premalcev_compatible_dendriform,
    "alternative-to-prealt-oop": _induce_alternative_to_prealt_oop,
    "alternative-to-prealt-rb": _induce_alternative_to_prealt_rb,
    "prealt-to-quadri-oop": _induce_prealt_to_quadri_oop,
    "prealt-to-quadri-rb": _induce_prealt_to_quadri_rb,
}

INDUCE_RECIPES = tuple(sorted(_INDUCE_RECIPES))


def induce(structure: HomStructure, w: OperatorWitness, recipe: str) -> HomStructure:
    """Build the structure a verified operator induces; refuses unverified
    operators."""
    handler = _INDUCE_RECIPES.get(recipe)
    if handler is None:
        raise UnknownKind(
            f"unknown induce recipe {recipe!r}; expected one of {INDUCE_RECIPES}"
        )
    return handler(structure, w)


def _induce_malcev_pair(structure, r1, r2):
    recipe = "malcev-pair-to-mdendriform"
    _require_roles(structure, [ProductRole.BRACKET], recipe)
    grid = _grid(structure, ProductRole.BRACKET)
    c1 = mat_cols(r1.matrix)
    c2 = mat_cols(r2.matrix)
    c12 = mat_cols(mat_mul(r1.matrix, r2.matrix))
    n = structure.dim
    tr = _tensor_from_fn(n, lambda i, j: grid_mul(grid, c1[i], c2[j]))
    tl = _tensor_from_fn(n, lambda i, j: grid_mul(grid, c12[i], {j: Fraction(1)}))
    return _carrier_structure(structure,
                              {ProductRole.TRI_RIGHT: tr, ProductRole.TRI_LEFT: tl},
                              recipe)


def _induce_alternative_pair(structure, r1, r2):
    recipe = "alternative-pair-to-quadri"
    _require_roles(structure, [ProductRole.STAR], recipe)
    grid = _grid(structure, ProductRole.STAR)
    c1 = mat_cols(r1.matrix)
    c2 = mat_cols(r2.matrix)
    c12 = mat_cols(mat_mul(r1.matrix, r2.matrix))
    n = structure.dim
    products = {
        ProductRole.SE: _tensor_from_fn(n, lambda i, j: grid_mul(grid, c12[i], {j: Fraction(1)})),
        ProductRole.NE: _tensor_from_fn(n, lambda i, j: grid_mul(grid, c1[i], c2[j])),
        ProductRole.SW: _tensor_from_fn(n, lambda i, j: grid_mul(grid, c2[i], c1[j])),
        ProductRole.NW: _tensor_from_fn(n, lambda i, j: grid_mul(grid, {i: Fraction(1)}, c12[j])),
    }
    return _carrier_structure(structure, products, recipe)


_PAIR_RECIPES = {
    "malcev-pair-to-mdendriform": _induce_malcev_pair,
    "alternative-pair-to-quadri": _induce_alternative_pair,
}

PAIR_RECIPES = tuple(sorted(_PAIR_RECIPES))


def induce_pair(structure: HomStructure, r1: OperatorWitness,
                r2: OperatorWitness, recipe: str) -> HomStructure:
    """Build the structure a verified commuting Rota-Baxter pair induces."""
    handler = _PAIR_RECIPES.get(recipe)
    if handler is None:
        raise UnknownKind(
            f"unknown pair recipe {recipe!r}; expected one of {PAIR_RECIPES}"
        )
    _require_rb(r1, recipe)
    _require_rb(r2, recipe)
    _require_valid(structure, r1, recipe)
    _require_valid(structure, r2, recipe)
    if not check_commuting(r1, r2):
        raise NotCommuting(f"recipe {recipe!r} needs the two operators to commute")
    return handler(structure, r1, r2)


# ---------------------------------------------------------------------------
# Hessian forms
# ---------------------------------------------------------------------------

def _form_eval(b: Matrix, u: Svec, v: Svec) -> Fraction:
    total = Fraction(0)
    for r, cu in u.items():
        row = b[r]
        for c, cv in v.items():
            total += cu * row[c] * cv
    return total


def check_hessian(structure: HomStructure, form: BilinearForm) -> CheckReport:
    """Symmetry, nondegeneracy, twist-invariance, and the cocycle law of a
    bilinear form against the structure's dot product."""
    start = time.perf_counter()
    if ProductRole.DOT not in structure.products:
        raise RoleMismatch("a Hessian check needs the dot product role")
    if form.dim != structure.dim:
        raise DimensionMismatch(
            f"form has dimension {form.dim}, structure {structure.dim}"
        )
    mat_inverse(structure.twist)  # SingularMatrix when the twist is singular
    n = structure.dim
    b = form.matrix
    alpha = structure.twist
    grid = _grid(structure, ProductRole.DOT)
    acols = mat_cols(alpha)
    violations: list[Violation] = []
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += 1
            diff = b[i][j] - b[j][i]
            if diff:
                violations.append(Violation("HESS-SYM", (i, j), {0: diff}))
    total += 1
    kernel = mat_kernel_vector(b)
    if kernel is not None:
        violations.append(Violation("HESS-NONDEG", (), kernel))
    inv_residual = mat_sub(mat_mul(mat_transpose(alpha), mat_mul(b, alpha)), b)
    for i in range(n):
        for j in range(n):
            total += 1
            if inv_residual[i][j]:
                violations.append(Violation("HESS-INV", (i, j), {0: inv_residual[i][j]}))
    for i, j, k in itertools.product(range(n), repeat=3):
        total += 1
        val = (
            _form_eval(b, grid[i][j] or {}, acols[k])
            - _form_eval(b, acols[i], grid[j][k] or {})
            - _form_eval(b, grid[j][i] or {}, acols[k])
            + _form_eval(b, acols[j], grid[i][k] or {})
        )
        if val:
            violations.append(Violation("HESS-COCYCLE", (i, j, k), {0: val}))
    return _finish("hessian", violations, total, start)


def hessian_dendrify(structure: HomStructure, form: BilinearForm) -> HomStructure:
    """Split the dot product through a Hessian form by solving the two
    defining adjoint systems; nondegeneracy makes the solutions unique."""
    report = check_hessian(structure, form)
    if not report.passed:
        first = report.violations[0]
        raise HessianInvalid(
            f"form fails the Hessian axioms (first violation {first.identity} "
            f"at {first.args})"
        )
    n = structure.dim
    alpha = structure.twist
    b = form.matrix
    solve = mat_inverse(mat_mul(mat_transpose(alpha), b))
    dot = structure.products[ProductRole.DOT]
    grid = tensor_grid(dot, n)
    cgrid = tensor_grid(tensor_commutator(dot), n)
    basis = [{t: Fraction(1)} for t in range(n)]
    b_alpha = mat_mul(b, alpha)

    # right-multiplication and bracket-left-multiplication matrices
    def cols_matrix(cols):
        return tuple(tuple(cols[c].get(r, Fraction(0)) for c in range(n))
                     for r in range(n))

    tr_entries = []
    tl_entries = []
    for j in range(n):
        r_j = cols_matrix([grid_mul(grid, basis[bidx], basis[j]) for bidx in range(n)])
        p_j = mat_mul(solve, mat_mul(mat_transpose(r_j), b_alpha))
        for i in range(n):
            for r in range(n):
                if p_j[r][i]:
                    tr_entries.append((i, j, r, p_j[r][i]))
    for i in range(n):
        ad_i = cols_matrix([cgrid[i][bidx] or {} for bidx in range(n)])
        q_i = mat_mul(solve, mat_mul(mat_transpose(ad_i), b_alpha))
        for j in range(n):
            for r in range(n):
                if q_i[r][j]:
                    tl_entries.append((i, j, r, -q_i[r][j]))
    return _carrier_structure(
        structure,
        {ProductRole.TRI_RIGHT: tensor_from_entries(tr_entries),
         ProductRole.TRI_LEFT: tensor_from_entries(tl_entries)},
        "hessian-dendrify",
    )


# ---------------------------------------------------------------------------
# operator endomorphisms
# ---------------------------------------------------------------------------

def check_oop_endomorphism(w: OperatorWitness, phiA: Matrix,
                           phiV: Matrix) -> bool:
    """True when the pair intertwines the operator and both actions."""
    if w.kind != KIND_O_OPERATOR:
        raise RoleMismatch("endomorphism check needs a relative operator witness")
    rep = w.rep
    assert rep is not None
    n, m = rep.base.dim, rep.module_dim
    phiA = matrix(phiA)
    phiV = matrix(phiV)
    if mat_shape(phiA) != (n, n):
        raise DimensionMismatch(f"algebra map must be {n}x{n}, got {mat_shape(phiA)}")
    if mat_shape(phiV) != (m, m):
        raise DimensionMismatch(f"module map must be {m}x{m}, got {mat_shape(phiV)}")
    if mat_mul(w.matrix, phiV) != mat_mul(phiA, w.matrix):
        return False
    pa_cols = mat_cols(phiA)
    for role in sorted(rep.actions, key=lambda r: r.value):
        slices = rep.actions[role]
        for i in range(n):
            twisted = mat_lincomb(pa_cols[i], slices, m, m)
            if mat_mul(twisted, phiV) != mat_mul(phiV, slices[i]):
                return False
    return True


def twist_oop_setup(structure: HomStructure, w: OperatorWitness, phiA: Matrix,
                    phiV: Matrix) -> tuple[HomStructure, Representation, OperatorWitness]:
    """Compose a relative operator setup with an endomorphism pair: products
    and actions are post-composed with the pair, which becomes the new twist
    maps, and the same operator map transfers."""
    rep = _require_oop(w, "twist-oop-setup", PRE_MALCEV_ACTIONS)
    if ProductRole.DOT not in structure.products:
        raise RoleMismatch("the composed setup needs the dot product role")
    phiA = matrix(phiA)
    phiV = matrix(phiV)
    morph = check_morphism(phiA, structure, structure, weak=True)
    if not morph.passed:
        first = morph.violations[0]
        raise EndomorphismInvalid(
            f"algebra map is not a product self-morphism (first violation "
            f"{first.identity} at {first.args})"
        )
    if not check_oop_endomorphism(w, phiA, phiV):
        raise EndomorphismInvalid(
            "the map pair fails the operator-endomorphism conditions"
        )
    new_structure = make_structure(
        dim=structure.dim,
        twist=phiA,
        products={ProductRole.DOT:
                  push_product(structure.products[ProductRole.DOT], phiA)},
        basis=structure.basis,
        meta={"construction": "twist-oop-setup"},
    )
    new_rep = Representation(
        base=new_structure,
        module_dim=rep.module_dim,
        module_twist=phiV,
        actions={
            ActionRole.LEFT: tuple(mat_mul(phiV, s)
                                   for s in rep.actions[ActionRole.LEFT]),
            ActionRole.RIGHT: tuple(mat_mul(phiV, s)
                                    for s in rep.actions[ActionRole.RIGHT]),
        },
    )
    new_witness = OperatorWitness(kind=KIND_O_OPERATOR, matrix=w.matrix,
                                  rep=new_rep)
    return new_structure, new_rep, new_witness
