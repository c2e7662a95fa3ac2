"""Representations of twisted algebras: checkers, regular/adjoint builders,
duals, and semidirect products.

An action is stored as one module-sized matrix per basis element of the base
algebra; all identity checks sweep base-basis tuples crossed with module basis
vectors and report exact residual columns.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exact import (
    DimensionMismatch,
    Matrix,
    Svec,
    Tensor,
    apply_cols,
    grid_mul,
    mat_add,
    mat_cols,
    mat_identity,
    mat_inverse,
    mat_lincomb,
    mat_mul,
    mat_shape,
    mat_sub,
    mat_transpose,
    matrix,
    sv_add,
    tensor_add,
    tensor_commutator,
    tensor_from_entries,
    tensor_grid,
)
from .structures import (
    CheckReport,
    HomStructure,
    ProductRole,
    RoleMismatch,
    StructureClass,
    Violation,
    derived_product,
    make_structure,
)


class NotMultiplicative(ValueError):
    """A twisted-power construction needs the twist to be a product morphism."""


class ActionRole(Enum):
    """Slots an action map can occupy in a representation."""

    RHO = "rho"                  # single Malcev-type action
    LEFT = "left"                # left action (pre-Malcev or alternative)
    RIGHT = "right"              # right action (pre-Malcev or alternative)
    LEFT_PREC = "left-prec"      # left action of the "precedes" product
    RIGHT_PREC = "right-prec"    # right action of the "precedes" product
    LEFT_SUCC = "left-succ"      # left action of the "succeeds" product
    RIGHT_SUCC = "right-succ"    # right action of the "succeeds" product


MALCEV_ACTIONS = frozenset({ActionRole.RHO})
PRE_MALCEV_ACTIONS = frozenset({ActionRole.LEFT, ActionRole.RIGHT})
PRE_ALTERNATIVE_ACTIONS = frozenset(
    {ActionRole.LEFT_PREC, ActionRole.RIGHT_PREC,
     ActionRole.LEFT_SUCC, ActionRole.RIGHT_SUCC}
)


@dataclass(frozen=True)
class Representation:
    """Actions of a structure on a module, with a module twist."""

    base: HomStructure
    module_dim: int
    module_twist: Matrix
    actions: Mapping[ActionRole, tuple[Matrix, ...]]

    def __post_init__(self):
        if self.module_dim < 1:
            raise DimensionMismatch(
                f"module dimension must be positive, got {self.module_dim}"
            )
        twist = matrix(self.module_twist)
        m = self.module_dim
        if mat_shape(twist) != (m, m):
            raise DimensionMismatch(
                f"module twist must be {m}x{m}, got {mat_shape(twist)}"
            )
        actions: dict[ActionRole, tuple[Matrix, ...]] = {}
        for role in sorted(self.actions, key=lambda r: r.value):
            slices = tuple(matrix(s) for s in self.actions[role])
            if len(slices) != self.base.dim:
                raise DimensionMismatch(
                    f"action '{role.value}' has {len(slices)} slices for base "
                    f"dimension {self.base.dim}"
                )
            for i, s in enumerate(slices):
                if mat_shape(s) != (m, m):
                    raise DimensionMismatch(
                        f"action '{role.value}' slice {i} must be {m}x{m}, "
                        f"got {mat_shape(s)}"
                    )
            actions[role] = slices
        object.__setattr__(self, "module_twist", twist)
        object.__setattr__(self, "actions", actions)

    def roles(self) -> frozenset[ActionRole]:
        return frozenset(self.actions)


def _lincomb(coeffs: Svec, mats: Sequence[Matrix], m: int) -> Matrix:
    """Linear combination of action slices: sum of coeffs[s] * mats[s]."""
    return mat_lincomb(coeffs, mats, m, m)


def _nonzero_columns(mat: Matrix, m: int):
    for b in range(m):
        col = {r: mat[r][b] for r in range(m) if mat[r][b]}
        if col:
            yield b, col


MatIdentity = tuple[str, int, Callable[..., Matrix]]


def _sweep_matrix_identities(identities: Sequence[MatIdentity], dim: int,
                             module_dim: int, target: str,
                             start: float) -> CheckReport:
    violations: list[Violation] = []
    total = 0
    for label, arity, fn in identities:
        for idx in itertools.product(range(dim), repeat=arity):
            total += module_dim
            residual = fn(*idx)
            for b, col in _nonzero_columns(residual, module_dim):
                violations.append(Violation(label, idx + (b,), col))
    violations.sort(key=lambda v: (v.identity, v.args))
    return CheckReport(
        target=target,
        passed=not violations,
        violations=tuple(violations),
        tuples_checked=total,
        elapsed=time.perf_counter() - start,
    )


def _malcev_action_identities(dim: int, bracket: Tensor, alpha: Matrix,
                              rho: Sequence[Matrix], beta: Matrix,
                              m: int) -> list[MatIdentity]:
    """The equivariance and four-term action laws for a Malcev-type action."""
    grid = tensor_grid(bracket, dim)
    acols = mat_cols(alpha)
    a2cols = mat_cols(mat_mul(alpha, alpha))
    beta2 = mat_mul(beta, beta)

    def rho_of(sv: Svec) -> Matrix:
        return _lincomb(sv, rho, m)

    rho_a = [rho_of(acols[i]) for i in range(dim)]
    rho_a2 = [rho_of(a2cols[i]) for i in range(dim)]

    def cell(i, j):
        return grid[i][j] or {}

    def eq(i):
        return mat_sub(mat_mul(rho_a[i], beta), mat_mul(beta, rho[i]))

    def four(i, j, k):
        lhs = mat_mul(rho_of(grid_mul(grid, cell(i, j), acols[k])), beta2)
        rhs = mat_sub(
            mat_mul(mat_mul(rho_a2[i], rho_a[j]), rho[k]),
            mat_mul(mat_mul(rho_a2[k], rho_a[i]), rho[j]),
        )
        rhs = mat_add(rhs, mat_mul(mat_mul(rho_a2[j], rho_of(cell(k, i))), beta))
        rhs = mat_sub(
            rhs,
            mat_mul(mat_mul(rho_of(apply_cols(acols, cell(j, k))), rho_a[i]), beta),
        )
        return mat_sub(lhs, rhs)

    return [("MREP-EQ", 1, eq), ("MREP-4T", 3, four)]


def _pre_malcev_rep_identities(rep: Representation) -> list[MatIdentity]:
    base = rep.base
    dim, m = base.dim, rep.module_dim
    dot = base.products[ProductRole.DOT]
    dgrid = tensor_grid(dot, dim)
    cgrid = tensor_grid(tensor_commutator(dot), dim)
    acols = mat_cols(base.twist)
    a2cols = mat_cols(mat_mul(base.twist, base.twist))
    beta = rep.module_twist
    beta2 = mat_mul(beta, beta)
    ell = rep.actions[ActionRole.LEFT]
    arr = rep.actions[ActionRole.RIGHT]
    rho = tuple(mat_sub(ell[i], arr[i]) for i in range(dim))

    def l_of(sv):
        return _lincomb(sv, ell, m)

    def r_of(sv):
        return _lincomb(sv, arr, m)

    def rho_of(sv):
        return _lincomb(sv, rho, m)

    l_a = [l_of(acols[i]) for i in range(dim)]
    l_a2 = [l_of(a2cols[i]) for i in range(dim)]
    r_a = [r_of(acols[i]) for i in range(dim)]
    r_a2 = [r_of(a2cols[i]) for i in range(dim)]
    rho_a = [rho_of(acols[i]) for i in range(dim)]

    def dcell(i, j):
        return dgrid[i][j] or {}

    def ccell(i, j):
        return cgrid[i][j] or {}

    identities = _malcev_action_identities(
        dim, tensor_commutator(dot), base.twist, ell, beta, m
    )

    def pm1(i):
        return mat_sub(mat_mul(beta, arr[i]), mat_mul(r_a[i], beta))

    def pm2(i, j, k):
        acc = mat_mul(mat_mul(r_a2[i], rho_a[j]), rho[k])
        acc = mat_sub(acc, mat_mul(r_of(grid_mul(dgrid, acols[k], dcell(j, i))), beta2))
        acc = mat_add(acc, mat_mul(mat_mul(l_a2[j], r_of(dcell(k, i))), beta))
        acc = mat_add(acc, mat_mul(mat_mul(l_of(apply_cols(acols, ccell(j, k))), r_a[i]), beta))
        return mat_sub(acc, mat_mul(mat_mul(l_a2[k], r_a[i]), rho[j]))

    def pm3(i, j, k):
        acc = mat_mul(mat_mul(l_a2[j], l_a[k]), arr[i])
        acc = mat_sub(acc, mat_mul(mat_mul(r_a2[i], rho_a[j]), rho[k]))
        acc = mat_sub(acc, mat_mul(mat_mul(l_a2[k], r_of(dcell(j, i))), beta))
        acc = mat_sub(acc, mat_mul(mat_mul(r_of(apply_cols(acols, dcell(k, i))), rho_a[j]), beta))
        return mat_add(acc, mat_mul(r_of(grid_mul(dgrid, ccell(k, j), acols[i])), beta2))

    def pm4(i, j, k):
        acc = mat_mul(r_of(grid_mul(dgrid, acols[j], dcell(k, i))), beta2)
        acc = mat_add(acc, mat_mul(mat_mul(r_a2[i], rho_of(ccell(j, k))), beta))
        acc = mat_sub(acc, mat_mul(mat_mul(l_a2[j], l_a[k]), arr[i]))
        acc = mat_add(acc, mat_mul(mat_mul(r_of(apply_cols(acols, dcell(j, i))), rho_a[k]), beta))
        return mat_add(acc, mat_mul(mat_mul(l_a2[k], r_a[i]), rho[j]))

    identities.extend([
        ("PMREP-1", 1, pm1),
        ("PMREP-2", 3, pm2),
        ("PMREP-3", 3, pm3),
        ("PMREP-4", 3, pm4),
    ])
    return identities


def _pre_alternative_rep_identities(rep: Representation, *,
                                    equivariance: bool) -> list[MatIdentity]:
    base = rep.base
    dim, m = base.dim, rep.module_dim
    prec = base.products[ProductRole.PREC]
    succ = base.products[ProductRole.SUCC]
    pgrid = tensor_grid(prec, dim)
    sgrid = tensor_grid(succ, dim)
    stgrid = tensor_grid(tensor_add(prec, succ), dim)
    acols = mat_cols(base.twist)
    beta = rep.module_twist
    Lp = rep.actions[ActionRole.LEFT_PREC]
    Rp = rep.actions[ActionRole.RIGHT_PREC]
    Ls = rep.actions[ActionRole.LEFT_SUCC]
    Rs = rep.actions[ActionRole.RIGHT_SUCC]
    L = tuple(mat_add(Lp[i], Ls[i]) for i in range(dim))
    R = tuple(mat_add(Rp[i], Rs[i]) for i in range(dim))

    def lp_of(sv):
        return _lincomb(sv, Lp, m)

    def rp_of(sv):
        return _lincomb(sv, Rp, m)

    def ls_of(sv):
        return _lincomb(sv, Ls, m)

    def rs_of(sv):
        return _lincomb(sv, Rs, m)

    lp_a = [lp_of(acols[i]) for i in range(dim)]
    rp_a = [rp_of(acols[i]) for i in range(dim)]
    ls_a = [ls_of(acols[i]) for i in range(dim)]
    rs_a = [rs_of(acols[i]) for i in range(dim)]

    def p(i, j):
        return pgrid[i][j] or {}

    def s(i, j):
        return sgrid[i][j] or {}

    def st(i, j):
        return stgrid[i][j] or {}

    def pabm1(i, j):
        lhs = mat_mul(ls_of(sv_add(st(i, j), st(j, i))), beta)
        return mat_sub(lhs, mat_add(mat_mul(ls_a[i], Ls[j]), mat_mul(ls_a[j], Ls[i])))

    def pabm2(i, j):
        lhs = mat_mul(rs_a[j], mat_add(L[i], R[i]))
        rhs = mat_add(mat_mul(ls_a[i], Rs[j]), mat_mul(rs_of(s(i, j)), beta))
        return mat_sub(lhs, rhs)

    def pabm3(i, j):
        lhs = mat_add(mat_mul(rp_a[j], Ls[i]), mat_mul(rp_a[j], Rp[i]))
        rhs = mat_add(mat_mul(ls_a[i], Rp[j]), mat_mul(rp_of(st(i, j)), beta))
        return mat_sub(lhs, rhs)

    def pabm4(i, j):
        lhs = mat_add(mat_mul(rp_a[j], Rs[i]), mat_mul(rp_a[j], Lp[i]))
        rhs = mat_add(mat_mul(lp_a[i], R[j]), mat_mul(rs_of(p(i, j)), beta))
        return mat_sub(lhs, rhs)

    def pabm5(i, j):
        lhs = mat_add(mat_mul(lp_of(p(j, i)), beta), mat_mul(lp_of(s(i, j)), beta))
        rhs = mat_add(mat_mul(lp_a[j], L[i]), mat_mul(ls_a[i], Lp[j]))
        return mat_sub(lhs, rhs)

    def pabm6(i, j):
        lhs = mat_add(mat_mul(rp_a[i], Ls[j]), mat_mul(ls_of(st(j, i)), beta))
        rhs = mat_add(mat_mul(ls_a[j], Rp[i]), mat_mul(ls_a[j], Ls[i]))
        return mat_sub(lhs, rhs)

    def pabm7(i, j):
        lhs = mat_add(mat_mul(rp_a[i], Rs[j]), mat_mul(rs_a[j], R[i]))
        rhs = mat_add(mat_mul(rs_of(p(j, i)), beta), mat_mul(rs_of(s(i, j)), beta))
        return mat_sub(lhs, rhs)

    def pabm8(i, j):
        lhs = mat_add(mat_mul(lp_of(s(j, i)), beta), mat_mul(rs_a[i], L[j]))
        rhs = mat_add(mat_mul(ls_a[j], Lp[i]), mat_mul(ls_a[j], Rs[i]))
        return mat_sub(lhs, rhs)

    def pabm9(i, j):
        lhs = mat_add(mat_mul(rp_a[i], Rp[j]), mat_mul(rp_a[j], Rp[i]))
        return mat_sub(lhs, mat_mul(rp_of(sv_add(st(i, j), st(j, i))), beta))

    def pabm10(i, j):
        lhs = mat_add(mat_mul(rp_a[j], Lp[i]), mat_mul(lp_of(p(i, j)), beta))
        return mat_sub(lhs, mat_mul(lp_a[i], mat_add(R[j], L[j])))

    identities: list[MatIdentity] = [
        ("PABM-1", 2, pabm1), ("PABM-2", 2, pabm2), ("PABM-3", 2, pabm3),
        ("PABM-4", 2, pabm4), ("PABM-5", 2, pabm5), ("PABM-6", 2, pabm6),
        ("PABM-7", 2, pabm7), ("PABM-8", 2, pabm8), ("PABM-9", 2, pabm9),
        ("PABM-10", 2, pabm10),
    ]
    if equivariance:
        for role, slices, at in (
            (ActionRole.LEFT_PREC, Lp, lp_a), (ActionRole.RIGHT_PREC, Rp, rp_a),
            (ActionRole.LEFT_SUCC, Ls, ls_a), (ActionRole.RIGHT_SUCC, Rs, rs_a),
        ):
            def fn(i, slices=slices, at=at):
                return mat_sub(mat_mul(beta, slices[i]), mat_mul(at[i], beta))

            identities.append((f"PA-EQ-{role.value}", 1, fn))
    return identities


_REP_CLASS_ACTIONS: dict[StructureClass, frozenset[ActionRole]] = {
    StructureClass.HOM_MALCEV: MALCEV_ACTIONS,
    StructureClass.HOM_PRE_MALCEV: PRE_MALCEV_ACTIONS,
    StructureClass.HOM_PRE_ALTERNATIVE: PRE_ALTERNATIVE_ACTIONS,
}


def check_rep(rep: Representation, cls: StructureClass, *,
              equivariance: bool = False) -> CheckReport:
    """Sweep the representation axioms of ``cls`` over all base-basis tuples
    and module basis vectors."""
    start = time.perf_counter()
    needed = _REP_CLASS_ACTIONS.get(cls)
    if needed is None:
        raise RoleMismatch(
            f"no representation axioms for class '{cls.value}'; supported: "
            f"{sorted(c.value for c in _REP_CLASS_ACTIONS)}"
        )
    if rep.roles() != needed:
        raise RoleMismatch(
            f"class '{cls.value}' needs actions {sorted(r.value for r in needed)}; "
            f"representation has {sorted(r.value for r in rep.roles())}"
        )
    if cls is StructureClass.HOM_MALCEV:
        bracket = derived_product(rep.base, ProductRole.BRACKET)
        identities = _malcev_action_identities(
            rep.base.dim, bracket, rep.base.twist,
            rep.actions[ActionRole.RHO], rep.module_twist, rep.module_dim,
        )
    elif cls is StructureClass.HOM_PRE_MALCEV:
        if ProductRole.DOT not in rep.base.products:
            raise RoleMismatch("base structure must carry the dot product role")
        identities = _pre_malcev_rep_identities(rep)
    else:
        if not {ProductRole.PREC, ProductRole.SUCC} <= rep.base.roles():
            raise RoleMismatch("base structure must carry the prec and succ roles")
        identities = _pre_alternative_rep_identities(rep, equivariance=equivariance)
    return _sweep_matrix_identities(
        identities, rep.base.dim, rep.module_dim, f"rep:{cls.value}", start
    )


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _twist_power_cols(structure: HomStructure, s: int) -> tuple[Svec, ...]:
    if s < 0:
        raise ValueError(f"twist power must be nonnegative, got {s}")
    power = mat_identity(structure.dim)
    for _ in range(s):
        power = mat_mul(structure.twist, power)
    return mat_cols(power)


def _require_multiplicative(structure: HomStructure,
                            roles: Sequence[ProductRole]) -> None:
    acols = mat_cols(structure.twist)
    for role in roles:
        grid = tensor_grid(structure.products[role], structure.dim)
        for i in range(structure.dim):
            for j in range(structure.dim):
                lhs = apply_cols(acols, grid[i][j] or {})
                rhs = grid_mul(grid, acols[i], acols[j])
                if lhs != rhs:
                    raise NotMultiplicative(
                        f"twist is not a morphism of product '{role.value}' "
                        f"at basis pair ({i}, {j})"
                    )


def _cols_matrix(cols: Sequence[Svec], m: int) -> Matrix:
    return tuple(
        tuple(cols[b].get(r, Fraction(0)) for b in range(len(cols)))
        for r in range(m)
    )


def _mult_slices(structure: HomStructure, tensor: Tensor,
                 pow_cols: Sequence[Svec], side: str) -> tuple[Matrix, ...]:
    """Action slices of twisted left/right multiplication by basis vectors."""
    dim = structure.dim
    grid = tensor_grid(tensor, dim)
    basis = [{b: Fraction(1)} for b in range(dim)]
    slices = []
    for i in range(dim):
        xi = pow_cols[i]
        if side == "left":
            cols = [grid_mul(grid, xi, basis[b]) for b in range(dim)]
        else:
            cols = [grid_mul(grid, basis[b], xi) for b in range(dim)]
        slices.append(_cols_matrix(cols, dim))
    return tuple(slices)


def adjoint_rep(structure: HomStructure, s: int = 0) -> Representation:
    """Twisted adjoint action: each basis vector acts by bracketing with its
    s-th twist power; module twist is the structure twist."""
    if ProductRole.BRACKET not in structure.products:
        raise RoleMismatch("adjoint representation needs the bracket role")
    pow_cols = _twist_power_cols(structure, s)
    rho = _mult_slices(structure, structure.products[ProductRole.BRACKET],
                       pow_cols, "left")
    return Representation(
        base=structure, module_dim=structure.dim,
        module_twist=structure.twist, actions={ActionRole.RHO: rho},
    )


def regular_pre_malcev_rep(structure: HomStructure, s: int = 0) -> Representation:
    """Left/right multiplication by s-th twist powers on the structure itself."""
    if ProductRole.DOT not in structure.products:
        raise RoleMismatch("regular representation needs the dot product role")
    if s > 0:
        _require_multiplicative(structure, [ProductRole.DOT])
    pow_cols = _twist_power_cols(structure, s)
    dot = structure.products[ProductRole.DOT]
    return Representation(
        base=structure, module_dim=structure.dim, module_twist=structure.twist,
        actions={
            ActionRole.LEFT: _mult_slices(structure, dot, pow_cols, "left"),
            ActionRole.RIGHT: _mult_slices(structure, dot, pow_cols, "right"),
        },
    )


def regular_alternative_rep(structure: HomStructure, s: int = 0) -> Representation:
    """Left/right multiplication actions for a single-product structure."""
    if ProductRole.STAR not in structure.products:
        raise RoleMismatch("regular representation needs the star product role")
    if s > 0:
        _require_multiplicative(structure, [ProductRole.STAR])
    pow_cols = _twist_power_cols(structure, s)
    star = structure.products[ProductRole.STAR]
    return Representation(
        base=structure, module_dim=structure.dim, module_twist=structure.twist,
        actions={
            ActionRole.LEFT: _mult_slices(structure, star, pow_cols, "left"),
            ActionRole.RIGHT: _mult_slices(structure, star, pow_cols, "right"),
        },
    )


def regular_pre_alternative_rep(structure: HomStructure, s: int = 0) -> Representation:
    """The four regular multiplication actions of a two-product splitting."""
    if not {ProductRole.PREC, ProductRole.SUCC} <= structure.roles():
        raise RoleMismatch("regular representation needs the prec and succ roles")
    if s > 0:
        _require_multiplicative(structure, [ProductRole.PREC, ProductRole.SUCC])
    pow_cols = _twist_power_cols(structure, s)
    prec = structure.products[ProductRole.PREC]
    succ = structure.products[ProductRole.SUCC]
    return Representation(
        base=structure, module_dim=structure.dim, module_twist=structure.twist,
        actions={
            ActionRole.LEFT_PREC: _mult_slices(structure, prec, pow_cols, "left"),
            ActionRole.RIGHT_PREC: _mult_slices(structure, prec, pow_cols, "right"),
            ActionRole.LEFT_SUCC: _mult_slices(structure, succ, pow_cols, "left"),
            ActionRole.RIGHT_SUCC: _mult_slices(structure, succ, pow_cols, "right"),
        },
    )


DUAL_VARIANTS = ("alpha", "alpha-inverse")


def _dual_setup(rep: Representation):
    beta_t = mat_transpose(rep.module_twist)
    beta_t_inv = mat_inverse(beta_t)
    beta_t_inv2 = mat_mul(beta_t_inv, beta_t_inv)
    return beta_t_inv, beta_t_inv2


def dual_malcev_rep(rep: Representation, variant: str = "alpha") -> Representation:
    """Action on the dual module: minus transpose composed with inverse twist
    powers.  ``variant`` selects which of the two published formulas is used;
    both are exposed because the source display is self-inconsistent."""
    if variant not in DUAL_VARIANTS:
        raise ValueError(f"unknown dual variant {variant!r}; expected one of {DUAL_VARIANTS}")
    if rep.roles() != MALCEV_ACTIONS:
        raise RoleMismatch("dual of a Malcev representation needs the rho action")
    alpha_inv = mat_inverse(rep.base.twist)
    beta_t_inv, beta_t_inv2 = _dual_setup(rep)
    rho = rep.actions[ActionRole.RHO]
    m = rep.module_dim
    acols = mat_cols(rep.base.twist)
    ai_cols = mat_cols(alpha_inv)
    dual = []
    for i in range(rep.base.dim):
        if variant == "alpha":
            mat = mat_mul(mat_transpose(_lincomb(acols[i], rho, m)), beta_t_inv2)
        else:
            mat = mat_mul(beta_t_inv2, mat_transpose(_lincomb(ai_cols[i], rho, m)))
        dual.append(tuple(tuple(-v for v in row) for row in mat))
    return Representation(
        base=rep.base, module_dim=m, module_twist=beta_t_inv,
        actions={ActionRole.RHO: tuple(dual)},
    )


def dual_pre_malcev_rep(rep: Representation) -> Representation:
    """Dual actions: the new left action is minus the transposed difference
    action at the twisted argument, the new right action the transposed right
    action, both composed with the inverse-squared dual twist."""
    if rep.roles() != PRE_MALCEV_ACTIONS:
        raise RoleMismatch("dual of a pre-Malcev representation needs left and right actions")
    mat_inverse(rep.base.twist)
    beta_t_inv, beta_t_inv2 = _dual_setup(rep)
    m = rep.module_dim
    acols = mat_cols(rep.base.twist)
    ell = rep.actions[ActionRole.LEFT]
    arr = rep.actions[ActionRole.RIGHT]
    rho = tuple(mat_sub(ell[i], arr[i]) for i in range(rep.base.dim))
    new_left = []
    new_right = []
    for i in range(rep.base.dim):
        rho_a_t = mat_transpose(_lincomb(acols[i], rho, m))
        r_a_t = mat_transpose(_lincomb(acols[i], arr, m))
        new_left.append(tuple(tuple(-v for v in row)
                              for row in mat_mul(rho_a_t, beta_t_inv2)))
        new_right.append(mat_mul(r_a_t, beta_t_inv2))
    return Representation(
        base=rep.base, module_dim=m, module_twist=beta_t_inv,
        actions={ActionRole.LEFT: tuple(new_left),
                 ActionRole.RIGHT: tuple(new_right)},
    )


def semidirect(structure: HomStructure, rep: Representation) -> HomStructure:
    """Block structure on base + module from a representation; the defining
    identities of the base class hold on it exactly when the representation
    axioms hold."""
    n, m = structure.dim, rep.module_dim
    roles = rep.roles()
    entries: dict[ProductRole, list] = {}

    def block_product(role: ProductRole, tensor: Tensor,
                      left_action: tuple[Matrix, ...] | None,
                      right_action: tuple[Matrix, ...] | None,
                      left_sign: int = 1, right_sign: int = 1) -> None:
        ent = []
        for (i, j), cell in tensor.items():
            for k, v in cell.items():
                ent.append((i, j, k, v))
        for i in range(n):
            if left_action is not None:
                mat = left_action[i]
                for b in range(m):
                    for r_ in range(m):
                        if mat[r_][b]:
                            ent.append((i, n + b, n + r_, left_sign * mat[r_][b]))
            if right_action is not None:
                mat = right_action[i]
                for a in range(m):
                    for r_ in range(m):
                        if mat[r_][a]:
                            ent.append((n + a, i, n + r_, right_sign * mat[r_][a]))
        entries[role] = ent

    if roles == MALCEV_ACTIONS:
        if ProductRole.BRACKET not in structure.products:
            raise RoleMismatch("semidirect with a rho action needs the bracket role")
        rho = rep.actions[ActionRole.RHO]
        block_product(ProductRole.BRACKET, structure.products[ProductRole.BRACKET],
                      rho, rho, left_sign=1, right_sign=-1)
    elif roles == PRE_MALCEV_ACTIONS:
        if ProductRole.DOT not in structure.products:
            raise RoleMismatch("semidirect with left/right actions needs the dot role")
        block_product(ProductRole.DOT, structure.products[ProductRole.DOT],
                      rep.actions[ActionRole.LEFT], rep.actions[ActionRole.RIGHT])
    elif roles == PRE_ALTERNATIVE_ACTIONS:
        if not {ProductRole.PREC, ProductRole.SUCC} <= structure.roles():
            raise RoleMismatch("semidirect with split actions needs prec and succ roles")
        block_product(ProductRole.PREC, structure.products[ProductRole.PREC],
                      rep.actions[ActionRole.LEFT_PREC],
                      rep.actions[ActionRole.RIGHT_PREC])
        block_product(ProductRole.SUCC, structure.products[ProductRole.SUCC],
                      rep.actions[ActionRole.LEFT_SUCC],
                      rep.actions[ActionRole.RIGHT_SUCC])
    else:
        raise RoleMismatch(
            f"no semidirect recipe for action roles {sorted(r.value for r in roles)}"
        )

    twist_rows = []
    for r_ in range(n):
        twist_rows.append(tuple(structure.twist[r_]) + (Fraction(0),) * m)
    for r_ in range(m):
        twist_rows.append((Fraction(0),) * n + tuple(rep.module_twist[r_]))
    basis = structure.basis + tuple(f"v{b}" for b in range(m))
    return make_structure(
        dim=n + m,
        twist=tuple(twist_rows),
        products={role: tensor_from_entries(ent) for role, ent in entries.items()},
        basis=basis,
        meta={"construction": "semidirect"},
    )
