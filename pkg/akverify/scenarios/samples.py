"""Default sample sets for the claim verifiers (all exact rationals)."""

from random import Random

from sympy import Rational

from akverify.lie.catalog import DS_LAMBDA_SAMPLES

DS_LAMBDAS: tuple[Rational, ...] = DS_LAMBDA_SAMPLES
DS_K_VALUES: tuple[Rational, ...] = (Rational(1), Rational(2))

CIRCLE_TS: tuple[Rational, ...] = (Rational(0), Rational(1, 2), Rational(1), Rational(3), Rational(-2, 3))

# (a6, a10, a9) with a9^2 = 1 - a10^2/a6^2
PYTHAGOREAN_BRANCH: tuple[tuple[Rational, Rational, Rational], ...] = (
    (Rational(5), Rational(4), Rational(3, 5)),
    (Rational(5), Rational(4), Rational(-3, 5)),
    (Rational(5), Rational(3), Rational(4, 5)),
    (Rational(13), Rational(5), Rational(12, 13)),
    (Rational(13), Rational(12), Rational(-5, 13)),
    (Rational(17), Rational(8), Rational(15, 17)),
)

# Values of a2 for the generic W(f1,f3,f2,f3) display; the component has
# degree at most 6 in a2, so seven values pin the identity in a2.
GENERIC_A2_VALUES: tuple[Rational, ...] = tuple(
    Rational(v) for v in ("-3", "-1", "-1/2", "0", "1/3", "1", "2")
)
WEYL_A2_DEGREE = 6

CONF_FLAT_EXAMPLE: dict[str, Rational] = {
    "a1": Rational(1),
    "a2": Rational(2),
    "a3": Rational(3),
    "a4": Rational(1, 2),
    "a5": Rational(-1),
    "a6": Rational(1),
}

PERTURBATION = Rational(1, 7)


def _rational(rng: Random, bound: int, positive: bool = False) -> Rational:
    if positive:
        return Rational(rng.randint(1, bound), rng.randint(1, bound))
    return Rational(rng.randint(-bound, bound), rng.randint(1, bound))


def random_conf_flat_tuples(rng: Random, count: int = 5, bound: int = 10) -> list[dict[str, Rational]]:
    """Free parameters ``a1..a6`` of conformally flat r2prime metrics (``a1, a3, a6 > 0``)."""
    tuples = []
    for _ in range(count):
        tuples.append(
            {
                "a1": _rational(rng, bound, positive=True),
                "a2": _rational(rng, bound),
                "a3": _rational(rng, bound, positive=True),
                "a4": _rational(rng, bound),
                "a5": _rational(rng, bound),
                "a6": _rational(rng, bound, positive=True),
            }
        )
    return tuples


def random_coframe_parameters(rng: Random, bound: int = 10) -> dict[str, Rational]:
    """All ten coframe parameters, off every special locus with high probability."""
    params = {f"a{i}": _rational(rng, bound) for i in range(1, 11)}
    for name in ("a1", "a3", "a6", "a10"):
        params[name] = _rational(rng, bound, positive=True)
    return params


def random_ak_samples(rng: Random, count: int = 5, bound: int = 10) -> list[dict[str, Rational]]:
    """Parameters ``a1, a4, a5, a6, t`` of conformally flat almost-Kahler r2prime structures."""
    samples = []
    for _ in range(count):
        samples.append(
            {
                "a1": _rational(rng, bound, positive=True),
                "a4": _rational(rng, bound),
                "a5": _rational(rng, bound),
                "a6": _rational(rng, bound, positive=True),
                "t": _rational(rng, bound),
            }
        )
    return samples
