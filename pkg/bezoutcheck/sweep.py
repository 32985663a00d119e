"""Identity registry and the parameter-grid runner behind `check`.

A job is a picklable (identity name, parameters, corrupt) triple; the
registry maps the name back to its verifier inside the worker, so results
are independent of the worker count. Output is sorted by parameter tuple.
"""

import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from . import bezout, identities, special_fn
from .errors import ConfigError, Failure
from .numeric_core import Scalar, random_positive_rational, random_rational
from .report import CheckReport

logger = logging.getLogger(__name__)

Range = Tuple[int, int]
Params = Dict[str, Scalar]
Job = Tuple[str, Params, bool]

RATIONAL_SAMPLE_BOUND = 1000
INTEGER_GRID: Tuple[Scalar, ...] = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class SweepConfig:
    identity: str
    n_range: Optional[Range] = None
    m_range: Optional[Range] = None
    k_range: Optional[Range] = None
    p_range: Optional[Range] = None
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    a: Optional[Fraction] = None
    samples: Optional[int] = None
    jobs: int = 1
    seed: int = 0
    inject_fault: bool = False
    progress: bool = False


@dataclass(frozen=True)
class IdentitySpec:
    name: str
    indices: Tuple[str, ...]
    default_ranges: Dict[str, Range]
    run: Callable[[Params, bool], CheckReport]
    # how extra parameters are drawn per grid point, see _samples
    sampling: Optional[str] = None
    default_samples: int = 0
    valid: Callable[[Params], bool] = lambda params: True


def _i(params: Params, name: str) -> int:
    return int(params[name])


def _nm(fn: Callable[..., CheckReport]) -> Callable[[Params, bool], CheckReport]:
    return lambda p, corrupt: fn(_i(p, "n"), _i(p, "m"), corrupt=corrupt)


def _knm(fn: Callable[..., CheckReport]) -> Callable[[Params, bool], CheckReport]:
    return lambda p, corrupt: fn(_i(p, "k"), _i(p, "n"), _i(p, "m"), corrupt=corrupt)


def _run_remark63(p: Params, corrupt: bool) -> CheckReport:
    return identities.verify_remark63(
        _i(p, "k"), _i(p, "m"), _i(p, "n"), corrupt=corrupt
    )


def _run_brill(p: Params, corrupt: bool) -> CheckReport:
    return identities.verify_brill(_i(p, "p"), p["x"], corrupt=corrupt)


def _run_gamma_ratio(p: Params, corrupt: bool) -> CheckReport:
    return identities.verify_gamma_ratio_form(
        _i(p, "n"), _i(p, "m"), p["alpha"], p["beta"], corrupt=corrupt
    )


def _run_remark62_beta(p: Params, corrupt: bool) -> CheckReport:
    return identities.verify_remark62_beta_form(
        _i(p, "n"), _i(p, "m"), p["alpha"], p["beta"], corrupt=corrupt
    )


def _run_beta(p: Params, corrupt: bool) -> CheckReport:
    return special_fn.verify_beta_identity(
        _i(p, "n"), _i(p, "m"), p["alpha"], p["beta"], p.get("a"), corrupt=corrupt
    )


def _run_beta_numeric(p: Params, corrupt: bool) -> CheckReport:
    return special_fn.verify_beta_identity(
        _i(p, "n"),
        _i(p, "m"),
        float(p["alpha"]),
        float(p["beta"]),
        float(p["a"]),
        corrupt=corrupt,
    )


def _run_bernstein(p: Params, corrupt: bool) -> CheckReport:
    return bezout.bernstein_split_check(_i(p, "n"), _i(p, "m"), corrupt=corrupt)


def _k_le(bound: str) -> Callable[[Params], bool]:
    return lambda params: params["k"] <= params[bound]


NM20 = {"n": (0, 20), "m": (0, 20)}
NM12 = {"n": (0, 12), "m": (0, 12)}
KNM12 = {"k": (0, 12), "n": (0, 12), "m": (0, 12)}
NM10 = {"n": (0, 10), "m": (0, 10)}
NM6 = {"n": (0, 6), "m": (0, 6)}

REGISTRY: Dict[str, IdentitySpec] = {
    spec.name: spec
    for spec in [
        IdentitySpec(
            "chaundy-bullard",
            ("n", "m"),
            NM20,
            _nm(identities.verify_chaundy_bullard),
        ),
        IdentitySpec("symmetry", ("n", "m"), NM20, _nm(identities.verify_symmetry)),
        IdentitySpec(
            "first-proof", ("n", "m"), NM20, _nm(identities.verify_first_proof)
        ),
        IdentitySpec(
            "second-proof",
            ("n", "m"),
            NM12,
            _nm(identities.verify_second_proof_shape),
        ),
        IdentitySpec(
            "cancellation", ("n", "m"), NM12, _nm(identities.verify_cancellation)
        ),
        IdentitySpec(
            "brill",
            ("p",),
            {"p": (0, 12)},
            _run_brill,
            sampling="x",
            default_samples=200,
        ),
        IdentitySpec(
            "lemma42",
            ("k", "n", "m"),
            KNM12,
            _knm(identities.verify_lemma42),
            valid=_k_le("n"),
        ),
        IdentitySpec(
            "w-telescoping",
            ("k", "n", "m"),
            KNM12,
            _knm(identities.w_telescoping_check),
            valid=_k_le("n"),
        ),
        IdentitySpec(
            "remark62", ("n", "m"), NM10, _nm(identities.verify_remark62)
        ),
        IdentitySpec(
            "remark62-beta",
            ("n", "m"),
            NM6,
            _run_remark62_beta,
            sampling="alpha-beta",
            default_samples=2,
        ),
        IdentitySpec(
            "remark63", ("k", "m", "n"), KNM12, _run_remark63, valid=_k_le("m")
        ),
        IdentitySpec(
            "twin",
            ("n", "m"),
            {"n": (0, 15), "m": (0, 15)},
            _nm(identities.verify_twin),
        ),
        IdentitySpec(
            "gamma-ratio",
            ("n", "m"),
            NM6,
            _run_gamma_ratio,
            sampling="alpha-beta",
            default_samples=3,
        ),
        IdentitySpec(
            "beta",
            ("n", "m"),
            {"n": (0, 8), "m": (0, 8)},
            _run_beta,
            sampling="alpha-beta-integer",
        ),
        IdentitySpec(
            "beta-numeric",
            ("n", "m"),
            {"n": (0, 4), "m": (0, 4)},
            _run_beta_numeric,
            sampling="beta-real",
            default_samples=4,
        ),
        IdentitySpec("bernstein", ("n", "m"), NM20, _run_bernstein),
        IdentitySpec("bezout-cross-check", ("n", "m"), NM20, _nm(bezout.cross_check)),
    ]
}

IDENTITY_NAMES = tuple(REGISTRY) + ("all",)


def _index_grid(spec: IdentitySpec, config: SweepConfig) -> Iterator[Params]:
    overrides = {
        "n": config.n_range,
        "m": config.m_range,
        "k": config.k_range,
        "p": config.p_range,
    }
    axes = []
    for name in spec.indices:
        lo, hi = overrides[name] or spec.default_ranges[name]
        axes.append(range(lo, hi + 1))
    for values in itertools.product(*axes):
        params: Params = dict(zip(spec.indices, values))
        if spec.valid(params):
            yield params


def _fixed_or_random(value: Optional[Fraction], rng: random.Random) -> Fraction:
    return random_positive_rational(rng, 50) if value is None else value


def _samples(
    spec: IdentitySpec, config: SweepConfig, rng: random.Random
) -> List[Params]:
    count = config.samples if config.samples is not None else spec.default_samples
    if spec.sampling == "x":
        return [
            {"x": random_rational(rng, RATIONAL_SAMPLE_BOUND)} for _ in range(count)
        ]
    if spec.sampling == "alpha-beta":
        if config.alpha is not None and config.beta is not None:
            return [{"alpha": config.alpha, "beta": config.beta}]
        return [
            {
                "alpha": _fixed_or_random(config.alpha, rng),
                "beta": _fixed_or_random(config.beta, rng),
            }
            for _ in range(count)
        ]
    if spec.sampling == "alpha-beta-integer":
        extra: Params = {} if config.a is None else {"a": config.a}
        alphas: Tuple[Scalar, ...] = (
            INTEGER_GRID if config.alpha is None else (config.alpha,)
        )
        betas: Tuple[Scalar, ...] = (
            INTEGER_GRID if config.beta is None else (config.beta,)
        )
        return [
            dict(alpha=al, beta=be, **extra)
            for al, be in itertools.product(alphas, betas)
        ]
    if spec.sampling == "beta-real":
        # (alpha, beta) in (0, 3], a in (0, 1], on a grid of step 1/1000
        return [
            {
                "alpha": Fraction(rng.randint(1, 3000), 1000),
                "beta": Fraction(rng.randint(1, 3000), 1000),
                "a": Fraction(rng.randint(1, 1000), 1000),
            }
            for _ in range(count)
        ]
    return [{}]


def build_jobs(config: SweepConfig) -> List[Job]:
    names = list(REGISTRY) if config.identity == "all" else [config.identity]
    if config.identity != "all" and config.identity not in REGISTRY:
        raise ConfigError(f"unknown identity {config.identity!r}")
    jobs: List[Job] = []
    for name in names:
        spec = REGISTRY[name]
        rng = random.Random(f"{config.seed}:{name}")
        count_before = len(jobs)
        for params in _index_grid(spec, config):
            for sample in _samples(spec, config, rng):
                jobs.append((name, {**params, **sample}, config.inject_fault))
        logger.debug("%s: %d instances", name, len(jobs) - count_before)
    if not jobs:
        raise ConfigError(
            f"the requested ranges give no valid instances of {config.identity}"
        )
    return jobs


def run_job(job: Job) -> CheckReport:
    name, params, corrupt = job
    try:
        return REGISTRY[name].run(params, corrupt)
    except Failure as e:
        logger.warning("%s %s: %s", name, params, e)
        return CheckReport.aborted(name, params, e)


def run_sweep(config: SweepConfig) -> List[CheckReport]:
    jobs = build_jobs(config)
    logger.debug("running %d jobs on %d worker(s)", len(jobs), config.jobs)
    bar = tqdm(total=len(jobs), disable=not config.progress, unit="check")
    reports: List[CheckReport] = []
    try:
        if config.jobs <= 1:
            for job in jobs:
                reports.append(run_job(job))
                bar.update()
        else:
            chunksize = max(1, len(jobs) // (config.jobs * 8))
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                for report in pool.map(run_job, jobs, chunksize=chunksize):
                    reports.append(report)
                    bar.update()
    finally:
        bar.close()
    reports.sort(key=CheckReport.sort_key)
    return reports


def count_passed(reports: Sequence[CheckReport]) -> int:
    return sum(1 for r in reports if r.passed)
