"""Closed-form bound evaluators, composable over exact or estimated bases.

Every formula is evaluated exactly when its arithmetic is rational (or
when the fractional power lands on an integer); otherwise the value is a
double with a stated 1e-9 relative tolerance.  Formulas that reference
an inner extremal quantity (an ex(...) or a maximum triangle count) take
a BaseEstimate that resolves those inner terms, so a bound can be fed a
companion formula, a user-supplied number, or an exactly computed value.

Formula identifiers are fixed strings (see FORMULAS); the parameter is k
for even-cycle based bounds and ell for the theta bound.  Results carry
provenance notes, an asymptotic flag for bounds whose lower-order term
has an unspecified constant, and a floor column since the bounded
quantities are integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

__all__ = [
    "InnerTerm",
    "BaseEstimate",
    "UserValue",
    "ValueTable",
    "FormulaBase",
    "ExactSearchBase",
    "EvaluatedBound",
    "MissingBaseError",
    "FORMULAS",
    "evaluate",
    "bound_table",
]

REL_TOL = 1e-9


class MissingBaseError(ValueError):
    """A formula needed an inner term that no base estimate provided."""


@dataclass(frozen=True)
class InnerTerm:
    """One inner extremal quantity required by a composite formula.

    quantity: "ex" (max edges; bipartite when m is set), "ex-linear3"
    (max hyperedges of a linear triple system), or "max-triangles".
    forbidden: "C4" exact cycle, "C<=6" all cycles up to, "berge-C5".
    """

    quantity: str
    forbidden: str
    n: int
    m: int | None = None

    def key(self) -> str:
        host = f"{self.m}x{self.n}" if self.m is not None else str(self.n)
        return f"{self.quantity}[{host};{self.forbidden}]"


class BaseEstimate:
    """Resolves inner terms to numbers; subclasses define the policy."""

    def resolve(self, term: InnerTerm):
        raise NotImplementedError

    def provenance(self, term: InnerTerm) -> str:
        return type(self).__name__


class UserValue(BaseEstimate):
    """A single user-supplied number, used for every requested term."""

    def __init__(self, value):
        self.value = value

    def resolve(self, term: InnerTerm):
        return self.value

    def provenance(self, term: InnerTerm) -> str:
        return "user-value"


class ValueTable(BaseEstimate):
    """Explicit mapping from term keys (InnerTerm.key()) to values."""

    def __init__(self, table: dict[str, object]):
        self.table = dict(table)

    def resolve(self, term: InnerTerm):
        try:
            return self.table[term.key()]
        except KeyError:
            raise MissingBaseError(f"no value for inner term {term.key()}") from None

    def provenance(self, term: InnerTerm) -> str:
        return "table"


class FormulaBase(BaseEstimate):
    """Feed inner ex(...) terms from a closed-form companion formula.

    Supports the self-contained formulas only: pikhurko-1, bukh-jiang-2,
    bondy-simonovits for ex(n, C_{2k}); kst-3 for ex(n, n, C_4);
    thm22-linear-11 for linear Berge hosts.
    """

    def __init__(self, formula: str):
        if formula not in ("pikhurko-1", "bukh-jiang-2", "bondy-simonovits",
                           "kst-3", "thm22-linear-11"):
            raise ValueError(f"{formula} cannot serve as a base formula")
        self.formula = formula

    def resolve(self, term: InnerTerm):
        k = _even_cycle_k(term.forbidden)
        if term.quantity == "ex" and term.m is None and k is not None:
            if self.formula in ("pikhurko-1", "bukh-jiang-2", "bondy-simonovits"):
                return evaluate(self.formula, term.n, k=k).value
        if term.quantity == "ex" and term.m is not None:
            if self.formula == "kst-3" and term.forbidden in ("C4", "C<=4") and term.m == term.n:
                return evaluate("kst-3", term.n).value
        if term.quantity == "ex-linear3" and self.formula == "thm22-linear-11":
            odd = _berge_cycle_length(term.forbidden)
            if odd is not None and odd % 2 == 1:
                return evaluate("thm22-linear-11", term.n, k=(odd - 1) // 2).value
        raise MissingBaseError(
            f"formula {self.formula} cannot estimate inner term {term.key()}"
        )

    def provenance(self, term: InnerTerm) -> str:
        return f"formula:{self.formula}"


class ExactSearchBase(BaseEstimate):
    """Resolve inner terms by exact search; only viable for tiny hosts."""

    def __init__(self):
        self._cache: dict[str, int] = {}

    def resolve(self, term: InnerTerm):
        key = term.key()
        if key not in self._cache:
            from . import search

            problem = _term_to_problem(term)
            result = search.solve(problem)
            if not result.optimal:
                raise MissingBaseError(f"search for {key} did not finish")
            self._cache[key] = result.value
        return self._cache[key]

    def provenance(self, term: InnerTerm) -> str:
        return "exact-search"


def _parse_forbidden_token(forbidden: str):
    from .detect import ForbiddenSpec

    if forbidden.startswith("berge-C<="):
        return ForbiddenSpec("berge-cycles-up-to", int(forbidden[9:]))
    if forbidden.startswith("berge-C"):
        return ForbiddenSpec("berge-cycle", int(forbidden[7:]))
    if forbidden.startswith("C<="):
        return ForbiddenSpec("all-cycles-up-to", int(forbidden[3:]))
    if forbidden.startswith("C"):
        return ForbiddenSpec("exact-cycle", int(forbidden[1:]))
    raise ValueError(f"cannot parse forbidden token {forbidden!r}")


def _term_to_problem(term: InnerTerm):
    from .search import SearchProblem

    spec = _parse_forbidden_token(term.forbidden)
    if term.quantity == "ex" and term.m is not None:
        return SearchProblem(universe="bipartite", n=term.n, m=term.m, forbidden=(spec,))
    if term.quantity == "ex":
        return SearchProblem(universe="graph", n=term.n, forbidden=(spec,))
    if term.quantity == "ex-linear3":
        return SearchProblem(universe="triples", n=term.n, forbidden=(spec,), linear=True)
    if term.quantity == "max-triangles":
        return SearchProblem(universe="graph", n=term.n, forbidden=(spec,),
                             objective="triangles")
    raise ValueError(f"unknown inner quantity {term.quantity!r}")


def _even_cycle_k(forbidden: str) -> int | None:
    if forbidden.startswith("C") and not forbidden.startswith("C<="):
        length = int(forbidden[1:])
        if length % 2 == 0:
            return length // 2
    return None


def _berge_cycle_length(forbidden: str) -> int | None:
    if forbidden.startswith("berge-C") and not forbidden.startswith("berge-C<="):
        return int(forbidden[7:])
    return None


@dataclass(frozen=True)
class EvaluatedBound:
    """One evaluated right-hand side with provenance."""

    formula: str
    n: int
    param: int | None
    value: float
    exact: Fraction | None
    asymptotic: bool
    notes: tuple[str, ...]
    bases: tuple[tuple[str, str], ...] = ()

    @property
    def floor(self) -> int:
        if self.exact is not None:
            return math.floor(self.exact)
        return math.floor(self.value)


def _int_nth_root(n: int, k: int) -> int | None:
    """Exact integer k-th root of n, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def _power_term(n: int, k: int) -> tuple[float, int | None]:
    """n^(1 + 1/k) as a float, plus the exact integer when n = r^k."""
    value = float(n) ** (1.0 + 1.0 / k)
    root = _int_nth_root(n, k)
    return value, (n * root if root is not None else None)


def _combine(coeffs_terms, rational_part: Fraction):
    """Sum coeff * (float, exact|None) products plus an exact rational part."""
    value = float(rational_part)
    exact: Fraction | None = rational_part
    for coeff, (term_value, term_exact) in coeffs_terms:
        value += float(coeff) * term_value
        if exact is not None and term_exact is not None:
            exact += Fraction(coeff) * term_exact
        else:
            exact = None
    return value, exact


def _as_number(x):
    """Normalize a resolved base value; ints and Fractions stay exact."""
    if isinstance(x, bool):
        raise TypeError("boolean is not a bound value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if x == int(x):
            return Fraction(int(x))
        return x
    raise TypeError(f"unsupported base value {x!r}")


@dataclass(frozen=True)
class _Formula:
    fid: str
    summary: str
    param: str | None  # "k" | "ell" | None
    param_min: int
    asymptotic: bool = False
    fixed_notes: tuple[str, ...] = ()
    inner: Callable[[int, int | None], tuple[InnerTerm, ...]] = lambda n, p: ()
    rhs: Callable[[int, int | None, tuple], tuple[float, Fraction | None]] = None  # type: ignore


def _no_inner(n, p):
    return ()


def _rhs_bondy_simonovits(n, k, bases):
    p, pe = _power_term(n, k)
    return _combine([(100 * k, (p, pe))], Fraction(0))


def _rhs_pikhurko(n, k, bases):
    p, pe = _power_term(n, k)
    return _combine([(k - 1, (p, pe))], Fraction(16 * (k - 1) * n))


def _rhs_bukh_jiang(n, k, bases):
    p, _ = _power_term(n, k)
    value = 80.0 * math.sqrt(k * math.log(k)) * p + 10.0 * k * k * n
    return value, None


def _rhs_kst(n, k, bases):
    root = _int_nth_root(n, 2)
    value = float(n) ** 1.5 + 2.0 * n
    exact = Fraction(n * root + 2 * n) if root is not None else None
    return value, exact


def _rhs_gyori_li_lower(n, k, bases):
    base = _as_number(bases[0])
    coeff = math.comb(k, 2)
    if isinstance(base, Fraction):
        exact = coeff * base
        return float(exact), exact
    return coeff * base, None


def _scaled_base(coeff: Fraction, base):
    base = _as_number(base)
    if isinstance(base, Fraction):
        exact = coeff * base
        return float(exact), exact
    return float(coeff) * base, None


def _rhs_gyori_li_upper(n, k, bases):
    return _scaled_base(Fraction((2 * k - 1) * (16 * k - 2), 3), bases[0])


def _rhs_thm11_odd(n, k, bases):
    return _scaled_base(Fraction(9 * (k - 1)), bases[0])


def _rhs_thm11_even(n, k, bases):
    return _scaled_base(Fraction(2 * k - 3, 3), bases[0])


def _rhs_gyori_lemons(n, k, bases):
    p, pe = _power_term(n, k)
    return _combine([(4 * k ** 4, (p, pe))], Fraction((15 * k ** 4 + 10 * k * k) * n))


def _rhs_thm21_odd(n, k, bases):
    t, ex, exlin = (_as_number(b) for b in bases)
    if all(isinstance(x, Fraction) for x in (t, ex, exlin)):
        exact = t + 4 * ex + 12 * exlin
        return float(exact), exact
    return float(t) + 4.0 * float(ex) + 12.0 * float(exlin), None


def _rhs_thm21_even(n, k, bases):
    t, ex = (_as_number(b) for b in bases)
    if all(isinstance(x, Fraction) for x in (t, ex)):
        exact = t + ex
        return float(exact), exact
    return float(t) + float(ex), None


def _rhs_thm22_linear(n, k, bases):
    p, pe = _power_term(n, k)
    return _combine([(2 * k, (p, pe))], Fraction(9 * k * n))


def _rhs_erdos_gallai(n, k, bases):
    exact = Fraction(k - 2, 2) * n
    return float(exact), exact


def _rhs_theta(n, ell, bases):
    exact = Fraction((ell - 2) * n)
    return float(exact), exact


def _rhs_erdos_pentagon(n, p, bases):
    exact = Fraction(n, 5) ** 5
    return float(exact), exact


def _rhs_alon_shikhelman(n, k, bases):
    return _scaled_base(Fraction(16, 3) * (k - 1), bases[0])


def _rhs_combined_odd(n, k, bases):
    p, pe = _power_term(n, k)
    return _combine([(9 * k * k + 10 * k + 5, (p, pe))], Fraction(0))


FORMULAS: dict[str, _Formula] = {}


def _register(f: _Formula):
    FORMULAS[f.fid] = f


_register(_Formula(
    fid="bondy-simonovits",
    summary="max edges with no cycle of length 2k: 100*k*n^(1+1/k)",
    param="k", param_min=2, inner=_no_inner, rhs=_rhs_bondy_simonovits,
))
_register(_Formula(
    fid="pikhurko-1",
    summary="max edges with no cycle of length 2k: (k-1)*n^(1+1/k) + 16*(k-1)*n",
    param="k", param_min=2, inner=_no_inner, rhs=_rhs_pikhurko,
))
_register(_Formula(
    fid="bukh-jiang-2",
    summary="max edges with no cycle of length 2k: 80*sqrt(k*log k)*n^(1+1/k) + 10*k^2*n",
    param="k", param_min=2, inner=_no_inner, rhs=_rhs_bukh_jiang,
    fixed_notes=("log taken as the natural logarithm (base left unstated at the source)",),
))
_register(_Formula(
    fid="kst-3",
    summary="max edges of an n+n bipartite graph with no 4-cycle: n^(3/2) + 2n",
    param=None, param_min=0, inner=_no_inner, rhs=_rhs_kst,
))
_register(_Formula(
    fid="gyori-li-lower-4",
    summary="lower bound for max triangles with no cycle of length 2k+1: "
            "C(k,2) * ex(floor(n/(k+1)), floor(n/(k+1)), all cycles <= 2k)",
    param="k", param_min=2,
    inner=lambda n, k: (InnerTerm("ex", f"C<={2 * k}", n // (k + 1), n // (k + 1)),),
    rhs=_rhs_gyori_li_lower,
    fixed_notes=("inner part size n/(k+1) taken with floor",),
))
_register(_Formula(
    fid="gyori-li-upper-4",
    summary="max triangles with no cycle of length 2k+1: "
            "(2k-1)(16k-2)/3 * ex(n, C_{2k})",
    param="k", param_min=2,
    inner=lambda n, k: (InnerTerm("ex", f"C{2 * k}", n),),
    rhs=_rhs_gyori_li_upper,
))
_register(_Formula(
    fid="thm11-odd-5",
    summary="max triangles with no cycle of length 2k+1: "
            "9(k-1) * ex(ceil(n/3), ceil(n/3), C_{2k})",
    param="k", param_min=2,
    inner=lambda n, k: (InnerTerm("ex", f"C{2 * k}", -(-n // 3), -(-n // 3)),),
    rhs=_rhs_thm11_odd,
))
_register(_Formula(
    fid="thm11-even-6",
    summary="max triangles with no cycle of length 2k: (2k-3)/3 * ex(n, C_{2k})",
    param="k", param_min=2,
    inner=lambda n, k: (InnerTerm("ex", f"C{2 * k}", n),),
    rhs=_rhs_thm11_even,
))
_register(_Formula(
    fid="gyori-lemons-7",
    summary="max hyperedges with no Berge cycle of length 2k+1: "
            "4k^4*n^(1+1/k) + 15k^4*n + 10k^2*n",
    param="k", param_min=2, inner=_no_inner, rhs=_rhs_gyori_lemons,
))
_register(_Formula(
    fid="thm21-odd-9",
    summary="max hyperedges with no Berge cycle of length 2k+1: "
            "t_{2k+1}(n) + 4*ex(n, C_{2k}) + 12*ex-linear3(n, berge 2k+1)",
    param="k", param_min=2,
    inner=lambda n, k: (
        InnerTerm("max-triangles", f"C{2 * k + 1}", n),
        InnerTerm("ex", f"C{2 * k}", n),
        InnerTerm("ex-linear3", f"berge-C{2 * k + 1}", n),
    ),
    rhs=_rhs_thm21_odd,
))
_register(_Formula(
    fid="thm21-even-10",
    summary="max hyperedges with no Berge cycle of length 2k: "
            "t_{2k}(n) + ex(n, C_{2k})",
    param="k", param_min=2,
    inner=lambda n, k: (
        InnerTerm("max-triangles", f"C{2 * k}", n),
        InnerTerm("ex", f"C{2 * k}", n),
    ),
    rhs=_rhs_thm21_even,
))
_register(_Formula(
    fid="thm22-linear-11",
    summary="max hyperedges of a linear system with no Berge cycle of length "
            "2k+1: 2k*n^(1+1/k) + 9k*n",
    param="k", param_min=2, inner=_no_inner, rhs=_rhs_thm22_linear,
))
_register(_Formula(
    fid="erdos-gallai-12",
    summary="max edges with no path on k vertices: (k-2)/2 * n",
    param="k", param_min=2, inner=_no_inner, rhs=_rhs_erdos_gallai,
))
_register(_Formula(
    fid="theta-15",
    summary="max edges with no theta subgraph of order >= ell: (ell-2) * n",
    param="ell", param_min=4, inner=_no_inner, rhs=_rhs_theta,
))
_register(_Formula(
    fid="erdos-pentagon",
    summary="max number of 5-cycles in a triangle-free graph: (n/5)^5",
    param=None, param_min=0, inner=_no_inner, rhs=_rhs_erdos_pentagon,
))
_register(_Formula(
    fid="alon-shikhelman",
    summary="max triangles with no cycle of length 2k+1: "
            "(16/3)(k-1) * ex(ceil(n/2), C_{2k})",
    param="k", param_min=2,
    inner=lambda n, k: (InnerTerm("ex", f"C{2 * k}", -(-n // 2)),),
    rhs=_rhs_alon_shikhelman,
))
_register(_Formula(
    fid="combined-odd",
    summary="max hyperedges with no Berge cycle of length 2k+1, leading term: "
            "(9k^2+10k+5)*n^(1+1/k)",
    param="k", param_min=2, asymptotic=True,
    fixed_notes=("asymptotic: lower-order term with unspecified constant omitted",),
    inner=_no_inner, rhs=_rhs_combined_odd,
))


def evaluate(formula: str, n: int, *, k: int | None = None, ell: int | None = None,
             base: BaseEstimate | None = None) -> EvaluatedBound:
    """Evaluate one formula at n (and parameter), resolving inner terms.

    Raises MissingBaseError when the formula needs an inner term and no
    base was given, and ValueError for unknown formulas or parameters out
    of range.
    """
    try:
        f = FORMULAS[formula]
    except KeyError:
        raise ValueError(f"unknown formula {formula!r}") from None
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if f.param == "k":
        p = k
        if p is None:
            raise ValueError(f"{formula} needs parameter k")
    elif f.param == "ell":
        p = ell
        if p is None:
            raise ValueError(f"{formula} needs parameter ell")
    else:
        p = None
    if p is not None and p < f.param_min:
        raise ValueError(f"{formula} needs {f.param} >= {f.param_min}, got {p}")
    terms = f.inner(n, p)
    resolved = []
    base_notes = []
    if terms:
        if base is None:
            keys = ", ".join(t.key() for t in terms)
            raise MissingBaseError(f"{formula} needs a base estimate for: {keys}")
        for t in terms:
            resolved.append(base.resolve(t))
            base_notes.append((t.key(), base.provenance(t)))
    value, exact = f.rhs(n, p, tuple(resolved))
    return EvaluatedBound(
        formula=formula,
        n=n,
        param=p,
        value=value,
        exact=exact,
        asymptotic=f.asymptotic,
        notes=f.fixed_notes,
        bases=tuple(base_notes),
    )


def bound_table(formulas, ns, params=None, base: BaseEstimate | None = None,
                ) -> list[EvaluatedBound]:
    """Evaluate a grid of formulas; one row per (formula, n, param).

    params may be None for parameter-free formulas; rows keep the given
    formula order, then ascend in n, then in the parameter.
    """
    rows = []
    for fid in formulas:
        f = FORMULAS.get(fid)
        if f is None:
            raise ValueError(f"unknown formula {fid!r}")
        param_values: list[int | None]
        if f.param is None:
            param_values = [None]
        else:
            if not params:
                raise ValueError(f"{fid} needs parameter values ({f.param})")
            param_values = sorted(params)
        for n in sorted(ns):
            for p in param_values:
                kwargs = {}
                if f.param == "k":
                    kwargs["k"] = p
                elif f.param == "ell":
                    kwargs["ell"] = p
                rows.append(evaluate(fid, n, base=base, **kwargs))
    return rows
