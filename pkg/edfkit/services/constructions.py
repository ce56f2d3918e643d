"""
Explicit constructions of optimal BSWEDFs and of cyclic SWEDFs.

Each construction builds its family, states the parameters its theorem
predicts and re-verifies the family before reporting it. A mismatch between
prediction and verification is a bug, never a result.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from sympy import isprime

from edfkit.core.cyclotomy import cyclotomic_class, qr_pdf, require_odd_prime
from edfkit.core.errors import InvalidInput, NotCoprime, PreconditionUnmet
from edfkit.core.groups import make_group
from edfkit.models.family import Family
from edfkit.schemas.reports import ConstructionResult, PredictedParameters
from edfkit.services.bounds import lambda_lower_bound
from edfkit.services.family_io import to_document
from edfkit.services.verification import (
    bimodal_check,
    classify_bswedf,
    rwedf_profile,
    verify_edf,
    verify_gsedf,
    verify_pdf,
    verify_pedf,
)

logger = logging.getLogger(__name__)

CONSTRUCTIONS = ("a", "b", "c", "d")

# Cyclic PDF with blocks of sizes (4, 4, 4, 3) and lambda 3; the last block is 5 * Z_15.
Z15_PDF_BLOCKS = [[6, 9, 2, 8], [11, 14, 7, 13], [1, 4, 12, 3], [0, 5, 10]]


def _q_with_odd_k(q: int) -> int:
    require_odd_prime(q)
    if q % 4 != 1:
        raise PreconditionUnmet(f"q={q} is not 1 mod 4", {"clause": "q = 4k+1"})
    k = (q - 1) // 4
    if k % 2 == 0:
        raise PreconditionUnmet(f"q={q} gives k={k}, which is even", {"clause": "k odd"})
    return k


def check_prediction(name: str, predicted: PredictedParameters, family: Family) -> None:
    """Raise when the built family's (n, m, K, a) differ from the theorem's."""
    built = (family.n, family.m, list(family.sizes), family.a)
    expected = (predicted.n, predicted.m, predicted.K, predicted.a)
    if built != expected:
        raise RuntimeError(
            f"construction {name}: built (n, m, K, a) = {built}, predicted {expected}"
        )


def _finish(
    name: str,
    parameters: dict[str, int],
    family: Family,
    predicted: PredictedParameters,
    swedf_checks: bool = False,
) -> ConstructionResult:
    check_prediction(name, predicted, family)
    lam = predicted.lam
    verified = classify_bswedf(family)
    if verified.lam != lam:
        raise RuntimeError(
            f"construction {name} {parameters}: verified lambda {verified.lam}, predicted {lam}"
        )
    floor = lambda_lower_bound(family.n, family.m, family.sizes)
    rwedf = bimodal = None
    if swedf_checks:
        rwedf = rwedf_profile(family)
        bimodal = bimodal_check(family)
        if not verified.is_swedf or rwedf.d != predicted.d:
            raise RuntimeError(f"construction {name} {parameters} is not the predicted SWEDF")
    provenance = {"construction": name, **parameters}
    flattened = to_document(family.flatten(), provenance) if family.group.is_coprime else None
    logger.info("construction %s %s verified: lambda=%d, floor=%d", name, parameters, lam, floor)
    return ConstructionResult(
        construction=name,
        parameters=parameters,
        family=to_document(family, provenance),
        flattened=flattened,
        predicted=predicted,
        verified=verified,
        lambda_floor=floor,
        optimal_certificate=lam == floor,
        rwedf=rwedf,
        bimodal=bimodal,
        taxonomy={
            "edf": verify_edf(family).holds,
            "gsedf": verify_gsedf(family).holds,
            "pedf": verify_pedf(family).holds,
        },
    )


def build_a(q: int) -> Family:
    _q_with_odd_k(q)
    d4 = [cyclotomic_class(q, 4, i).elements for i in range(4)]
    group = make_group([2, q])
    return Family.from_values(group, [
        [(0, 0), (1, 0)],
        [(0, x) for x in d4[0]] + [(1, x) for x in d4[2]],
        [(0, x) for x in d4[1]] + [(0, x) for x in d4[3]],
    ])


def construct_a(q: int) -> ConstructionResult:
    """
    {(0,0),(1,0)}, {0}xD4_0 u {1}xD4_2, {0}x(D4_1 u D4_3) over Z_2 x F_q.

    Optimal (2q, 3, (2,2k,2k), 4k+2, 2k+1)-BSWEDF for q = 4k+1 prime, k odd.

    Raises:
        NotPrime: if q is not an odd prime
        PreconditionUnmet: if q != 1 (mod 4) or k is even
    """
    k = _q_with_odd_k(q)
    predicted = PredictedParameters(n=2 * q, m=3, K=[2, 2 * k, 2 * k], a=4 * k + 2, lam=2 * k + 1)
    return _finish("a", {"q": q, "k": k}, build_a(q), predicted)


def construct_b(n1: int, pdf: Optional[Family] = None) -> ConstructionResult:
    """
    {(1,0)}, {0}xE_1, {0}xE_2 over Z_2 x G from a PDF {{0}, E_1, E_2} of G.

    Without an explicit PDF, G = Z_n1 and the PDF is the quadratic-residue
    one, which is verified rather than assumed. Optimal
    (2 n1, 3, (1,k,k), 2k+1, k+1)-BSWEDF for n1 = 2k+1.

    Raises:
        NotPrime: if no PDF is given and n1 is not an odd prime
        PreconditionUnmet: if the PDF fails verification or has the wrong shape
    """
    if pdf is None:
        pdf = qr_pdf(n1)
    elif pdf.n != n1:
        raise InvalidInput(f"PDF is over a group of order {pdf.n}, expected {n1}")
    if n1 % 2 == 0:
        raise PreconditionUnmet(f"n1={n1} must be odd", {"clause": "n1 = 2k+1"})
    k = (n1 - 1) // 2
    zero = pdf.group.zero
    if pdf.m != 3 or pdf.blocks[0] != (zero,) or pdf.sizes[1:] != (k, k):
        raise PreconditionUnmet(
            f"PDF must be {{0}}, E_1, E_2 with |E_i| = {k}, got sizes {list(pdf.sizes)}",
            {"clause": "shape"},
        )
    report = verify_pdf(pdf)
    if not report.holds or report.lam != k - 1:
        raise PreconditionUnmet(
            f"{{0}}, E_1, E_2 is not a ({n1},{k},{k - 1})-PDF",
            {"clause": "pdf", "witness": report.witness.model_dump() if report.witness else None},
        )
    group = make_group([2, *pdf.group.factors])
    family = Family.from_values(group, [
        [(1, *zero.coords)],
        [(0, *g.coords) for g in pdf.blocks[1]],
        [(0, *g.coords) for g in pdf.blocks[2]],
    ])
    predicted = PredictedParameters(n=2 * n1, m=3, K=[1, k, k], a=2 * k + 1, lam=k + 1)
    return _finish("b", {"n1": n1, "k": k}, family, predicted)


def construct_c(q: int) -> ConstructionResult:
    """
    {(1,0)}, {(2,0)}, {0}xD2_0, {0}xD2_1 over Z_3 x F_q.

    Optimal (3q, 4, (1,1,2k,2k), 4k+2, 2k+1)-BSWEDF for q = 4k+1 prime with k
    odd; the odd-k requirement is what makes the D2 cross differences uniform.
    """
    k = _q_with_odd_k(q)
    group = make_group([3, q])
    family = Family.from_values(group, [
        [(1, 0)],
        [(2, 0)],
        [(0, x) for x in cyclotomic_class(q, 2, 0).elements],
        [(0, x) for x in cyclotomic_class(q, 2, 1).elements],
    ])
    predicted = PredictedParameters(
        n=3 * q, m=4, K=[1, 1, 2 * k, 2 * k], a=4 * k + 2, lam=2 * k + 1
    )
    return _finish("c", {"q": q, "k": k}, family, predicted)


def _product_pdf(pdf: Family, factors: tuple[int, int]) -> Family:
    if pdf.group.factors == factors:
        return pdf
    if pdf.group.is_cyclic_presentation and pdf.n == math.prod(factors):
        return pdf.lift(factors)
    raise PreconditionUnmet(
        f"PDF over {pdf.group} cannot be read as Z{factors[0]} x Z{factors[1]}",
        {"clause": "group"},
    )


def construct_d(pdf: Family, k: int, t: int) -> ConstructionResult:
    """
    Cyclic SWEDF from an ((k-1)(tk+1), (k,...,k,k-1), k-1)-PDF whose last block is Z_{k-1} x {0}.

    The PDF blocks of size k are kept and the last block is replaced by the
    singletons (j, 0), 1 <= j <= k-2. The result is an
    (n, t(k-1)+k-2, (k,...,k,1,...,1), n-1, (t+1)k^2-(t+3)k)-SWEDF, i.e. an
    RWEDF with d = (t+1)k-t-3, and it never has the bimodal property.

    Raises:
        NotCoprime: if gcd(k-1, tk+1) > 1
        PreconditionUnmet: naming the clause that failed
    """
    if k < 3 or t < 1:
        raise PreconditionUnmet(f"need k >= 3 and t >= 1, got k={k}, t={t}", {"clause": "k, t"})
    factors = (k - 1, t * k + 1)
    if math.gcd(*factors) != 1:
        raise NotCoprime(f"gcd(k-1, tk+1) = gcd{factors} is not 1")
    pdf = _product_pdf(pdf, factors)
    l = t * (k - 1) + 1
    expected = (k,) * (l - 1) + (k - 1,)
    if pdf.sizes != expected:
        raise PreconditionUnmet(
            f"PDF block sizes {list(pdf.sizes)} differ from {list(expected)}", {"clause": "sizes"}
        )
    report = verify_pdf(pdf)
    if not report.holds or report.lam != k - 1:
        raise PreconditionUnmet(
            f"input is not a PDF with lambda {k - 1}",
            {"clause": "pdf", "witness": report.witness.model_dump() if report.witness else None},
        )
    group = pdf.group
    last = {group.element((j, 0)) for j in range(k - 1)}
    if set(pdf.blocks[-1]) != last:
        raise PreconditionUnmet(
            f"last PDF block must be Z{k - 1} x {{0}}", {"clause": "last block"}
        )
    blocks = [list(b) for b in pdf.blocks[:-1]] + [[group.element((j, 0))] for j in range(1, k - 1)]
    family = Family.from_values(group, blocks)
    n = (k - 1) * (t * k + 1)
    predicted = PredictedParameters(
        n=n, m=t * (k - 1) + k - 2, K=[k] * (t * (k - 1)) + [1] * (k - 2), a=n - 1,
        lam=(t + 1) * k * k - (t + 3) * k, d=Fraction((t + 1) * k - t - 3),
    )
    return _finish("d", {"k": k, "t": t}, family, predicted, swedf_checks=True)


def _verified(name: str, family: Family) -> Family:
    report = verify_pdf(family)
    if not report.holds:
        raise RuntimeError(f"built-in PDF {name} fails verification: {report.reason}")
    return family


@lru_cache(maxsize=1)
def _catalog(max_prime: int) -> tuple[tuple[str, Family], ...]:
    z15 = Family.from_values(make_group([15]), Z15_PDF_BLOCKS)
    entries = [("z15", z15.lift((3, 5))), ("z15-cyclic", z15)]
    entries += [(f"qr-{p}", qr_pdf(p)) for p in range(3, max_prime + 1, 2) if isprime(p)]
    return tuple((name, _verified(name, family)) for name, family in entries)


def builtin_pdf_catalog(max_prime: int = 31) -> list[tuple[str, Family]]:
    """Shipped PDFs, each re-verified the first time the catalog is built."""
    return list(_catalog(max_prime))


def builtin_pdf(name: str) -> Family:
    prime = int(name[3:]) if name.startswith("qr-") and name[3:].isdigit() else None
    if prime is not None:
        return _verified(name, qr_pdf(prime))
    for entry, family in builtin_pdf_catalog():
        if entry == name:
            return family
    raise InvalidInput(f"unknown built-in PDF {name!r}")


def admissible(kind: str, max_q: int) -> Iterable[int]:
    """Parameters up to max_q accepted by construction a, b or c."""
    for q in range(3, max_q + 1, 2):
        if not isprime(q):
            continue
        if kind == "b" or (kind in ("a", "c") and q % 8 == 5):
            yield q


def sweep(kind: str, max_q: int) -> list[ConstructionResult]:
    """Run a construction for every admissible prime up to max_q."""
    builders = {"a": construct_a, "b": construct_b, "c": construct_c}
    if kind not in builders:
        raise InvalidInput(f"sweeps cover constructions a, b and c, not {kind!r}")
    return [builders[kind](q) for q in admissible(kind, max_q)]
