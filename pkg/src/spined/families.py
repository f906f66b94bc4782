"""Standard small semigroups, as validated tables."""
from __future__ import annotations

from itertools import product

import numpy as np

from .core import FiniteSemigroup, validate
from .errors import ParamOutOfRange


def _need(cond, msg):
    if not cond:
        raise ParamOutOfRange(msg)


def _from_elements(elements, op, label=str) -> FiniteSemigroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[op(x, y)] for y in elements] for x in elements]
    return validate(np.array(table, dtype=np.int64), [label(x) for x in elements])


def trivial() -> FiniteSemigroup:
    return validate([[0]], ["e"])


def semilattice_chain(k: int) -> FiniteSemigroup:
    """0 < 1 < ... < k-1 under meet; k-1 is the identity."""
    _need(k >= 1, "chain length must be >= 1")
    return _from_elements(list(range(k)), min)


def rectangular_band(m: int, k: int) -> FiniteSemigroup:
    """I x Lambda with (i, l)(j, u) = (i, u); (i, l) has index i*k + l."""
    _need(m >= 1 and k >= 1, "rectangular band dimensions must be >= 1")
    return _from_elements(list(product(range(m), range(k))), lambda x, y: (x[0], y[1]),
                          lambda x: f"({x[0]},{x[1]})")


def left_zero(m: int) -> FiniteSemigroup:
    _need(m >= 1, "size must be >= 1")
    return _from_elements(list(range(m)), lambda x, y: x)


def right_zero(k: int) -> FiniteSemigroup:
    _need(k >= 1, "size must be >= 1")
    return _from_elements(list(range(k)), lambda x, y: y)


def cyclic_group(k: int) -> FiniteSemigroup:
    _need(k >= 1, "group order must be >= 1")
    return _from_elements(list(range(k)), lambda x, y: (x + y) % k)


def monogenic(index: int, period: int) -> FiniteSemigroup:
    """<a | a^(index+period) = a^index>; element i is a^(i+1)."""
    _need(index >= 1 and period >= 1, "index and period must be >= 1")
    top = index + period - 1

    def power(s):
        return s if s <= top else index + (s - index) % period
    return _from_elements(list(range(1, top + 1)), lambda x, y: power(x + y), lambda x: f"a^{x}")


def full_transformation_monoid(n: int) -> FiniteSemigroup:
    """All maps on {0..n-1}, acting on the right: x(fg) = (xf)g."""
    _need(1 <= n <= 3, "full transformation monoid supported for 1 <= n <= 3")
    maps = list(product(range(n), repeat=n))
    return _from_elements(maps, lambda f, g: tuple(g[f[x]] for x in range(n)),
                          lambda f: "[" + "".join(map(str, f)) + "]")


def symmetric_inverse_monoid(n: int) -> FiniteSemigroup:
    """Partial injections on {0..n-1}, composed left to right."""
    _need(1 <= n <= 2, "symmetric inverse monoid supported for 1 <= n <= 2")
    maps = []
    for images in product(range(-1, n), repeat=n):
        used = [y for y in images if y >= 0]
        if len(used) == len(set(used)):
            maps.append(images)

    def compose(f, g):
        return tuple(-1 if f[x] < 0 else g[f[x]] for x in range(n))
    return _from_elements(maps, compose,
                          lambda f: "[" + "".join("-" if y < 0 else str(y) for y in f) + "]")


def brandt_b2() -> FiniteSemigroup:
    """{0, e11, e12, e21, e22} with e_ij e_kl = e_il when j = k, else 0."""
    elements = [None, (1, 1), (1, 2), (2, 1), (2, 2)]

    def op(x, y):
        if x is None or y is None or x[1] != y[0]:
            return None
        return (x[0], y[1])
    return _from_elements(elements, op, lambda x: "0" if x is None else f"e{x[0]}{x[1]}")


def direct_product(A: FiniteSemigroup, B: FiniteSemigroup) -> FiniteSemigroup:
    """Pairs (a, b) with index a*|B| + b."""
    pairs = list(product(range(A.order), range(B.order)))
    return _from_elements(pairs, lambda x, y: (A.mul(x[0], y[0]), B.mul(x[1], y[1])),
                          lambda x: f"({A.label(x[0])},{B.label(x[1])})")


def rees_matrix(group_order: int, sandwich) -> FiniteSemigroup:
    """Rees matrix semigroup M[Z_k; I, Lambda; P] over the cyclic group Z_k.

    ``sandwich`` is the |Lambda| x |I| matrix P of group elements;
    (i, g, l)(j, h, u) = (i, g + P[l][j] + h, u).
    """
    P = [list(row) for row in sandwich]
    _need(group_order >= 1 and P and P[0], "need a non-empty sandwich matrix")
    n_lambda, n_i = len(P), len(P[0])
    _need(all(len(r) == n_i for r in P), "sandwich matrix must be rectangular")
    k = group_order
    elements = list(product(range(n_i), range(k), range(n_lambda)))
    return _from_elements(elements, lambda x, y: (x[0], (x[1] + P[x[2]][y[0]] + y[1]) % k, y[2]),
                          lambda x: f"({x[0]},{x[1]},{x[2]})")


FAMILIES = {
    "trivial": trivial,
    "semilattice_chain": semilattice_chain,
    "rectangular_band": rectangular_band,
    "left_zero": left_zero,
    "right_zero": right_zero,
    "cyclic_group": cyclic_group,
    "monogenic": monogenic,
    "full_transformation_monoid": full_transformation_monoid,
    "symmetric_inverse_monoid": symmetric_inverse_monoid,
    "brandt_B2": brandt_b2,
    "rees_matrix": rees_matrix,
}


def generate(family: str, *params) -> FiniteSemigroup:
    """Build a family member by name, e.g. ``generate("rectangular_band", 2, 3)``.

    ``direct_product`` takes two ``(family, params...)`` tuples.
    """
    if family == "direct_product":
        _need(len(params) == 2, "direct_product needs two factors")
        return direct_product(*(generate(f[0], *f[1:]) for f in params))
    if family not in FAMILIES:
        raise ParamOutOfRange(f"unknown family {family!r}")
    try:
        return FAMILIES[family](*params)
    except TypeError as exc:
        raise ParamOutOfRange(f"{family}: {exc}") from None
