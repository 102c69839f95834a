"""Closed-form secure domination numbers and upper bounds per family."""

from __future__ import annotations

from dataclasses import dataclass

from secdom.errors import InvalidSizeError, NotApplicableError
from secdom.graphs import Family, FamilyInstance


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# case labels are part of the golden output; do not reword
CASE_ALL = "all n"
CASE_OTHERWISE = "otherwise"
CASE_P2CN_0MOD8 = "n ≡ 0 mod 8"
CASE_M2N_4MOD8 = "n ≡ 4 mod 8"
CASE_P3PN_LOW = "n ≤ 8 or n = 10"
CASE_P3PN_HIGH = "n = 9 or n ≥ 11"
CASE_P3CN_EXCEPTION = "n = 4, 7"


@dataclass(frozen=True)
class FormulaResult:
    family: Family
    n: int
    value: int
    case_label: str


def gamma_s_formula(inst: FamilyInstance) -> FormulaResult:
    n = inst.n
    fam = inst.family
    ladder = _ceil_div(3 * n + 1, 4)
    if fam is Family.P2xPn:
        value, case = ladder, CASE_ALL
    elif fam is Family.P2xCn:
        value, case = (3 * n // 4, CASE_P2CN_0MOD8) if n % 8 == 0 else (ladder, CASE_OTHERWISE)
    elif fam is Family.M2n:
        value, case = (3 * n // 4, CASE_M2N_4MOD8) if n % 8 == 4 else (ladder, CASE_OTHERWISE)
    elif fam is Family.P3xPn:
        value, case = (n + 1, CASE_P3PN_LOW) if n <= 8 or n == 10 else (n + 2, CASE_P3PN_HIGH)
    else:
        if n in (4, 7):
            value, case = n + 1, CASE_P3CN_EXCEPTION
        else:
            value, case = 3 * _ceil_div(n, 3), CASE_OTHERWISE
    return FormulaResult(fam, n, value, case)


def winter_formula(n: int) -> int:
    """Conjectured secure domination number of the prism ``P2 □ Cn``.

    Evaluated as ``floor((n+7)/8) + floor((n+4)/8) + floor((n+2)/4) +
    floor((n+1)/4)``.  The same expression written with ceilings gives 10
    at ``n = 8`` where the true value is 6; only the floor reading agrees
    with the ``P2xCn`` closed form.
    """
    if n < 3:
        raise InvalidSizeError(f"n must be at least 3, got {n}")
    return (n + 7) // 8 + (n + 4) // 8 + (n + 2) // 4 + (n + 1) // 4


def upper_bound_formula(inst: FamilyInstance) -> int:
    """Constructive upper bound, where one is available for this residue.

    Raises :class:`NotApplicableError` for ``P2xCn`` unless ``n ≡ 0 mod 8``
    and for ``M2n`` unless ``n ≡ 4 mod 8`` with ``n >= 12``.
    """
    n = inst.n
    fam = inst.family
    if fam is Family.P2xPn:
        return _ceil_div(3 * n + 1, 4)
    if fam is Family.P2xCn:
        if n % 8 != 0:
            raise NotApplicableError(f"P2xCn bound needs n ≡ 0 mod 8, got n={n}")
        return 3 * n // 4
    if fam is Family.M2n:
        if n % 8 != 4 or n < 12:
            raise NotApplicableError(f"M2n bound needs n ≡ 4 mod 8 and n >= 12, got n={n}")
        return 3 * n // 4
    if fam is Family.P3xPn:
        return n + 2
    return 3 * _ceil_div(n, 3)
