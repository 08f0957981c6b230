"""
Verification suites.

Each suite checks one family of identities on one algebra with exact
arithmetic and reports a SuiteResult. Budget overruns and inapplicable
checks are recorded as skipped, never as failures; any other toolkit
error inside a check fails it.

Seeding. A run seed s and the position of the algebra in the run give a
SeedSequence([s, index]); suite number i (position in DEFAULT_SUITES)
draws from its i-th spawned child, so selecting a subset of suites does
not change what the others sample.
"""
import logging
from contextlib import contextmanager
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from src.algebra.algebra import validate
from src.algebra.automorphism import Automorphism
from src.algebra.grading import check_grading, euler_derivation
from src.config import DEFAULT_SUITES
from src.frobenius.frobenius import check_frobenius
from src.hochschild import calculus
from src.hochschild.cochain import BasisTuple, Cochain, linear_combination
from src.hochschild.random_cochains import random_cochain, random_homogeneous_cochain, sample_tuples
from src.linalg.sparse import add_scaled, scale_vector
from src.provenance import ManifestStatus, RunConfig, RunManifest, SuiteResult, combine_status, create_manifest
from src.resolution import augmentation, generator_catalogue, generator_spec, nu_conjugate_average, realize_generator
from src.services.cohomology_service import CohomologyEngine
from src.services.pipeline_service import AlgebraBundle, AlgebraPipeline
from src.utils.errors import (
    AveragingUndefinedError,
    DegreeTooLargeError,
    GeneratorConditionError,
    HochschildError,
    InapplicableError,
)
from src.utils.logging_utils import LoggerContext
from src.zoo.dnr import nu_closed_form

IDENTITIES = {
    'structure': "associativity and unit, Frobenius guards, graded products; R(n,r): dimension, "
                 "closed-form nu, <a,b> = [a = bar b], eps1 = gamma_1 Euler derivation",
    'twist_homotopy': "delta(Delta f) + Delta(delta f) = f^nu - f",
    'homotopy': "D_{t+1} D_t = 0 on left generators and mu D_{-1} = Id",
    'euler_bracket': "[f, e_G] = q f for G-homogeneous f of internal degree q",
    'gerstenhaber': "f u g - (-1)^{nm} g u f and [f + delta u, g] - [f, g] are coboundaries; "
                    "[nu-fixed cocycle, nu-fixed coboundary] is a nu-fixed coboundary",
    'delta_prime': "Delta(f u g) = Delta'(f (x) g) + (-1)^{nm} Delta'(g (x) f) for g^nu = g",
    'hh_nu': "delta(Delta f) = f^nu - f for cocycles f; nu acts as the identity on HH",
    'bv_identity': "[a, b] = -(-1)^{(|a|-1)|b|} (Delta(a u b) - Delta(a) u b - (-1)^{|a|} a u Delta(b))",
    'delta_squared': "Delta o Delta = 0 on HH^{nu up}; Delta keeps the internal degree when eps is homogeneous",
    'delta_eps1': "Delta([eps1~]) = [1/r]",
    'delta_generators': "Delta(f_s) = Delta(g_s) = Delta(h_s) = Delta(p_s) = 0 in HH^{nu up}",
    'theta': "Theta bijective when char k does not divide ord(sigma); Theta multiplicative",
    'char_robustness': "hh_dim agrees between Q and F_3",
}

ROBUSTNESS_FIELDS = ('Q', 'Fp:3', 'Fp:2')
DELTA_ZERO_KINDS = ('f', 'g', 'h', 'p')


class _SuiteRecorder:
    """Collects the checks of one suite."""

    def __init__(self, name: str, algebra: str, seed: int):
        self.name = name
        self.algebra = algebra
        self.seed = seed
        self.checks: List[Dict[str, Any]] = []
        self.errors: List[str] = []
        self.warnings: List[str] = []
        self.samples = 0

    def record(self, check: str, passed: bool, samples: int = 1, detail: Optional[Dict] = None,
               error: Optional[str] = None) -> None:
        entry = {'check': check, 'status': (ManifestStatus.PASS if passed else ManifestStatus.FAIL).value,
                 'samples': samples}
        if detail:
            entry['detail'] = detail
        self.checks.append(entry)
        self.samples += samples
        if not passed:
            self.errors.append(f"{check}: {error or 'identity violated'}")

    def skip(self, check: str, reason: str) -> None:
        self.checks.append({'check': check, 'status': ManifestStatus.SKIPPED.value, 'samples': 0, 'reason': reason})
        self.warnings.append(f"{check} skipped: {reason}")

    @contextmanager
    def guard(self, check: str):
        try:
            yield
        except (DegreeTooLargeError, InapplicableError, AveragingUndefinedError) as exc:
            self.skip(check, str(exc))
        except HochschildError as exc:
            self.record(check, False, samples=0, error=str(exc))

    def result(self) -> SuiteResult:
        status = combine_status([ManifestStatus(c['status']) for c in self.checks])
        return SuiteResult(
            name=self.name,
            identity=IDENTITIES[self.name],
            status=status,
            algebra=self.algebra,
            samples=self.samples,
            seed=self.seed,
            checks=self.checks,
            errors=self.errors,
            warnings=self.warnings,
        )


class VerificationService:
    """
    Runs verification suites on algebra bundles.

    Args:
        config: Toolkit configuration (verify, sampling and engine sections)
        logger: Logger for progress and timings
    """

    def __init__(self, config: dict, logger: Optional[logging.Logger] = None):
        self.config = config
        self.logger = logger or logging.getLogger(__name__)
        self.verify_config = config.get('verify', {})
        sampling = config.get('sampling', {})
        self.seed = int(sampling.get('seed', 0))
        self.random_cochains = int(sampling.get('random_cochains', 40))
        self.tuples_per_cochain = int(sampling.get('tuples_per_cochain', 4))
        self.support_factor = int(sampling.get('support_factor', 3))
        self.scalar_pool = tuple(sampling.get('scalar_pool', (-2, -1, 1, 2)))
        self.n_jobs = int(config.get('engine', {}).get('n_jobs', 1))

        self._suites: Dict[str, Callable] = {
            'structure': self._structure,
            'twist_homotopy': self._twist_homotopy,
            'homotopy': self._homotopy,
            'euler_bracket': self._euler_bracket,
            'gerstenhaber': self._gerstenhaber,
            'delta_prime': self._delta_prime,
            'hh_nu': self._hh_nu,
            'bv_identity': self._bv_identity,
            'delta_squared': self._delta_squared,
            'delta_eps1': self._delta_eps1,
            'delta_generators': self._delta_generators,
            'theta': self._theta,
            'char_robustness': self._char_robustness,
        }

    def _setting(self, key: str, default: Any) -> Any:
        return self.verify_config.get(key, default)

    # Running

    def selected_suites(self, suites: Optional[Sequence[str]] = None) -> List[str]:
        """Requested suites in report order; unknown names raise ValueError."""
        requested = list(suites) if suites else list(self._setting('suites', DEFAULT_SUITES))
        unknown = [s for s in requested if s not in self._suites]
        if unknown:
            raise ValueError(f"Unknown suite(s): {', '.join(unknown)}. Available: {', '.join(DEFAULT_SUITES)}")
        return [s for s in DEFAULT_SUITES if s in requested]

    def run_suite(self, name: str, bundle: AlgebraBundle, algebra_index: int = 0) -> SuiteResult:
        """Run one suite with its deterministic generator."""
        children = np.random.SeedSequence([self.seed, algebra_index]).spawn(len(DEFAULT_SUITES))
        rng = np.random.default_rng(children[DEFAULT_SUITES.index(name)])
        recorder = _SuiteRecorder(name, bundle.description, self.seed)
        with LoggerContext(self.logger, f"suite {name} on {bundle.description}"):
            self._suites[name](bundle, rng, recorder)
        result = recorder.result()
        self.logger.info(f"{name} on {bundle.description}: {result.status.value} ({result.samples} samples)")
        return result

    def run(self, bundle: AlgebraBundle, suites: Optional[Sequence[str]] = None,
            algebra_index: int = 0) -> List[SuiteResult]:
        """Run the selected suites on one algebra; results come back in report order."""
        names = self.selected_suites(suites)
        if self.n_jobs == 1 or len(names) < 2:
            return [self.run_suite(name, bundle, algebra_index) for name in names]
        return Parallel(n_jobs=self.n_jobs, prefer='threads')(
            delayed(self.run_suite)(name, bundle, algebra_index) for name in names
        )

    def verify(self, bundles: Sequence[AlgebraBundle], run_config: RunConfig,
               input_path: Optional[str] = None) -> RunManifest:
        """Run every selected suite on every bundle and collect the manifest."""
        description = "; ".join(b.description for b in bundles)
        manifest = create_manifest(description, run_config, input_path=input_path)
        for index, bundle in enumerate(bundles):
            for result in self.run(bundle, run_config.suites or None, algebra_index=index):
                manifest.add_suite(result)
        if manifest.status == ManifestStatus.FAIL:
            failed = [f"{s.name} ({s.algebra})" for s in manifest.suites if s.status == ManifestStatus.FAIL]
            self.logger.warning(f"Verification failed: {', '.join(failed)}")
        return manifest

    # Sampling helpers

    def _scalar(self, field, rng: np.random.Generator):
        value = field(int(self.scalar_pool[rng.integers(len(self.scalar_pool))]))
        return value if value else field.one()

    def _random(self, algebra, degree: int, rng: np.random.Generator, name: str) -> Cochain:
        return random_cochain(algebra, degree, rng, pool=self.scalar_pool,
                              support_factor=self.support_factor, name=name)

    def _tuples(self, algebra, degree: int, rng: np.random.Generator,
                extra: Sequence[BasisTuple] = ()) -> List[BasisTuple]:
        tuples = sample_tuples(algebra, degree, self.tuples_per_cochain, rng)
        tuples.extend(t for t in extra if len(t) == degree)
        return tuples

    def _orbit_sum(self, engine: CohomologyEngine, sigma: Optional[Automorphism],
                   vector: Dict, degree: int) -> Dict:
        """sum_i vector^{sigma^i} over one orbit (sigma-fixed for any field)."""
        if sigma is None or sigma.is_identity():
            return dict(vector)
        order = sigma.order(engine.order_bound)
        if order is None:
            raise InapplicableError("orbit sum", f"{sigma.name} has no order within the bound")
        total: Dict = {}
        for i in range(order):
            add_scaled(total, engine.twist_vector(sigma.power(i), vector, degree), 1)
        return total

    def _random_cocycle(self, engine: CohomologyEngine, degree: int, rng: np.random.Generator,
                        sigma: Optional[Automorphism] = None, name: str = "z") -> Cochain:
        """
        A random combination of class representatives plus a random
        coboundary, in the sigma-fixed complex when sigma is given.
        """
        basis = engine.hh(degree, sigma)
        vector: Dict = {}
        for z in basis.vectors:
            add_scaled(vector, z, self._scalar(engine.field, rng))
        if degree > 0:
            u = engine.cochain_vector(self._random(engine.algebra, degree - 1, rng, name="u"))
            u = self._orbit_sum(engine, basis.sigma, u, degree - 1)
            add_scaled(vector, engine.delta_vector(u, degree - 1), 1)
        return engine.vector_cochain(vector, degree, name=name)

    # Suites

    def _structure(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        zoo = bundle.zoo
        algebra = zoo.algebra
        field = algebra.field

        with rec.guard("algebra axioms"):
            report = validate(algebra)
            rec.record("algebra axioms", report['valid'], samples=algebra.dim ** 3,
                       error="; ".join(report['errors']))

        if zoo.frobenius is None:
            rec.skip("Frobenius form", "no Frobenius form attached")
        else:
            with rec.guard("Frobenius form"):
                report = check_frobenius(zoo.frobenius)
                rec.record("Frobenius form", report['valid'], samples=algebra.dim ** 3,
                           error="; ".join(report['errors']))

        for name in sorted(zoo.gradings):
            with rec.guard(f"grading {name}"):
                report = check_grading(algebra, zoo.gradings[name])
                rec.record(f"grading {name}", report['valid'], samples=algebra.dim ** 2,
                           error="; ".join(report['errors']))

        if not bundle.is_dnr:
            return
        P = zoo.presentation
        expected = P.r * (P.n ** 2 + P.n - 2)
        rec.record("dimension r(n^2+n-2)", algebra.dim == expected,
                   detail={'dim': algebra.dim, 'expected': expected},
                   error=f"dim {algebra.dim} != {expected}")

        with rec.guard("nu closed form"):
            closed = nu_closed_form(P, algebra)
            rec.record("nu closed form", zoo.nu == closed, samples=algebra.dim)

        with rec.guard("pairing duality"):
            one, zero = field.one(), field.zero()
            bad = [
                (algebra.labels[a], algebra.labels[b])
                for a in range(algebra.dim)
                for b in range(algebra.dim)
                if zoo.frobenius.pairing({a: one}, {b: one}) != (one if a == P.bar[b] else zero)
            ]
            rec.record("pairing duality", not bad, samples=algebra.dim ** 2,
                       error=f"<a,b> != [a = bar b] at {bad[:5]}")

        with rec.guard("eps1 realization"):
            # realize_generator compares eps1 with the Euler derivation itself
            realize_generator(bundle.psi_map, generator_spec(P, 'eps1', 1, field.characteristic))
            rec.record("eps1 realization", True, samples=algebra.dim)

        with rec.guard("homotopy table coverage"):
            report = bundle.homotopy_table.coverage_report()
            rec.warnings.extend(report['warnings'])
            rec.record("homotopy table coverage", report['valid'], samples=len(report['cases']),
                       detail={'cases': report['cases']}, error="; ".join(report['errors']))

    def _twist_homotopy(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        zoo = bundle.zoo
        frobenius = zoo.frobenius
        if frobenius is None:
            rec.skip("twist homotopy", "no Frobenius form attached")
            return
        algebra = zoo.algebra
        nu = frobenius.nakayama
        count = int(self._setting('twist_homotopy_cochains', 50))
        for n in range(1, int(self._setting('twist_homotopy_max_degree', 4)) + 1):
            check = f"degree {n}"
            with rec.guard(check):
                failures = []
                for i in range(count):
                    f = self._random(algebra, n, rng, name=f"f{n}_{i}")
                    lhs = linear_combination([
                        (1, calculus.coboundary(calculus.bv_delta(f, frobenius))),
                        (1, calculus.bv_delta(calculus.coboundary(f), frobenius)),
                    ])
                    rhs = linear_combination([(1, calculus.twist(f, nu)), (-1, f)])
                    where = lhs.differs_at(rhs, self._tuples(algebra, n, rng, f.support()))
                    if where is not None:
                        failures.append(where)
                rec.record(check, not failures, samples=count,
                           error=f"{len(failures)} cochain(s) differ, first at {failures[:1]}")

    def _homotopy(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        if not bundle.is_dnr:
            rec.skip("homotopy", "only defined for R(n,r)")
            return
        table = bundle.homotopy_table
        zoo = bundle.zoo
        one = zoo.algebra.field.one()
        top = 2 * zoo.presentation.period
        for t in range(top + 1):
            check = f"D_{t + 1} D_{t}"
            with rec.guard(check):
                generators = table.left_generators(t)
                bad = [g for g in generators if not table.apply(t + 1, table.apply(t, g)).is_zero()]
                rec.record(check, not bad, samples=len(generators),
                           error=f"{len(bad)} left generator(s) not annihilated")

        with rec.guard("mu D_-1"):
            bad = [b for b in range(zoo.algebra.dim) if augmentation(zoo, table.d_minus_one({b: one})) != {b: one}]
            rec.record("mu D_-1", not bad, samples=zoo.algebra.dim,
                       error=f"fails on {[zoo.algebra.labels[b] for b in bad[:5]]}")

    def _euler_bracket(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        zoo = bundle.zoo
        algebra = zoo.algebra
        names = sorted(zoo.gradings)
        if not names:
            rec.skip("Euler bracket", "no gradings attached")
        else:
            count = int(self._setting('euler_cases', 100))
            with rec.guard("Euler bracket"):
                failures = []
                for case in range(count):
                    grading = zoo.gradings[names[int(rng.integers(len(names)))]]
                    n = int(rng.integers(1, 4))
                    q = int(rng.integers(-2, 3))
                    f = random_homogeneous_cochain(algebra, n, grading, q, rng, pool=self.scalar_pool,
                                                   support_factor=self.support_factor)
                    lhs = calculus.bracket(f, euler_derivation(algebra, grading))
                    for t in self._tuples(algebra, n, rng, f.support()):
                        if lhs.evaluate(t) != scale_vector(f.evaluate(t), algebra.field(q)):
                            failures.append((grading.name, n, q, t))
                            break
                rec.record("Euler bracket", not failures, samples=count,
                           error=f"{len(failures)} case(s) fail, first {failures[:1]}")

        if bundle.is_dnr:
            with rec.guard("[eps1, eps1] = 0"):
                spec = generator_spec(zoo.presentation, 'eps1', 1, algebra.field.characteristic)
                eps1 = realize_generator(bundle.psi_map, spec)
                square = calculus.bracket(eps1, eps1)
                bad = [b for b in range(algebra.dim) if square.evaluate((b,))]
                rec.record("[eps1, eps1] = 0", not bad, samples=algebra.dim,
                           error=f"nonzero at {[algebra.labels[b] for b in bad[:5]]}")

    def _degree_pairs(self, total: int, low: int = 0) -> List[tuple]:
        return [(n, m) for n in range(low, total + 1) for m in range(low, total + 1 - n)]

    def _gerstenhaber(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        engine = bundle.engine
        algebra = engine.algebra
        top = int(self._setting('gerstenhaber_degree', 2))
        cases = int(self._setting('gerstenhaber_cases', 10))

        pairs = self._degree_pairs(top)
        with rec.guard("cup graded commutative"):
            failures = []
            for case in range(cases):
                n, m = pairs[int(rng.integers(len(pairs)))]
                f = self._random_cocycle(engine, n, rng, name="f")
                g = self._random_cocycle(engine, m, rng, name="g")
                commutator = linear_combination([(1, calculus.cup(f, g)),
                                                 (-((-1) ** (n * m)), calculus.cup(g, f))])
                if engine.is_coboundary(commutator) is None:
                    failures.append((n, m))
            rec.record("cup graded commutative", not failures, samples=cases,
                       error=f"commutators not coboundaries in degrees {failures[:3]}")

        pairs = [(n, m) for n, m in self._degree_pairs(top + 1) if n >= 1]
        with rec.guard("bracket descends"):
            failures = []
            for case in range(cases):
                n, m = pairs[int(rng.integers(len(pairs)))]
                f = self._random_cocycle(engine, n, rng, name="f")
                g = self._random_cocycle(engine, m, rng, name="g")
                u = engine.cochain_vector(self._random(algebra, n - 1, rng, name="u"))
                shifted = dict(engine.cochain_vector(f))
                add_scaled(shifted, engine.delta_vector(u, n - 1), 1)
                f2 = engine.vector_cochain(shifted, n, name="f+du")
                difference = linear_combination([(1, calculus.bracket(f2, g)), (-1, calculus.bracket(f, g))])
                if engine.is_coboundary(difference) is None:
                    failures.append((n, m))
            rec.record("bracket descends", not failures, samples=cases,
                       error=f"[f + du, g] - [f, g] not a coboundary in degrees {failures[:3]}")

        nu = bundle.zoo.nu
        if nu is None:
            rec.skip("fixed bracket ideal", "no Frobenius form attached")
            return
        pairs = [(n, m) for n, m in self._degree_pairs(top + 1, low=1)]
        with rec.guard("fixed bracket ideal"):
            failures = []
            for case in range(cases):
                n, m = pairs[int(rng.integers(len(pairs)))]
                z = self._random_cocycle(engine, n, rng, sigma=nu, name="z")
                u = engine.cochain_vector(self._random(algebra, m - 1, rng, name="u"))
                u = self._orbit_sum(engine, nu, u, m - 1)
                b = engine.vector_cochain(engine.delta_vector(u, m - 1), m, name="du")
                if engine.is_coboundary(calculus.bracket(z, b), sigma=nu) is None:
                    failures.append((n, m))
            rec.record("fixed bracket ideal", not failures, samples=cases,
                       error=f"[z, du] not a fixed coboundary in degrees {failures[:3]}")

    def _delta_prime(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        zoo = bundle.zoo
        frobenius = zoo.frobenius
        if frobenius is None:
            rec.skip("Delta' splitting", "no Frobenius form attached")
            return
        algebra = zoo.algebra
        pairs = [(n, m) for n, m in self._degree_pairs(int(self._setting('twist_homotopy_max_degree', 4)), low=1)]
        with rec.guard("Delta' splitting"):
            failures = []
            for case in range(self.random_cochains):
                n, m = pairs[int(rng.integers(len(pairs)))]
                f = self._random(algebra, n, rng, name="f")
                g = nu_conjugate_average(zoo, self._random(algebra, m, rng, name="g"), divide=False)
                lhs = calculus.bv_delta(calculus.cup(f, g), frobenius)
                rhs = linear_combination([
                    (1, calculus.delta_prime(f, g, frobenius)),
                    ((-1) ** (n * m), calculus.delta_prime(g, f, frobenius)),
                ])
                extra = [(s + t)[:-1] for s in f.support()[:4] for t in self._tuples(algebra, m, rng)]
                where = lhs.differs_at(rhs, self._tuples(algebra, n + m - 1, rng, extra))
                if where is not None:
                    failures.append((n, m, where))
            rec.record("Delta' splitting", not failures, samples=self.random_cochains,
                       error=f"{len(failures)} case(s) fail, first {failures[:1]}")

    def _hh_nu(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        zoo = bundle.zoo
        engine = bundle.engine
        frobenius = zoo.frobenius
        if frobenius is None:
            rec.skip("HH^nu = HH", "no Frobenius form attached")
            return
        nu = frobenius.nakayama
        top = int(self._setting('hh_nu_degree', 2))
        count = int(self._setting('hh_nu_cocycles', 50))

        for n in range(1, top + 1):
            check = f"Delta f witnesses f^nu - f, degree {n}"
            with rec.guard(check):
                samples = len(range(n - 1, count, top))
                failures = 0
                for i in range(samples):
                    f = self._random_cocycle(engine, n, rng, name=f"z{n}_{i}")
                    vector = engine.cochain_vector(f)
                    expected = engine.twist_vector(nu, vector, n)
                    add_scaled(expected, vector, -1)
                    witness = engine.cochain_vector(calculus.bv_delta(f, frobenius))
                    if engine.delta_vector(witness, n - 1) != expected:
                        failures += 1
                rec.record(check, failures == 0, samples=samples,
                           error=f"{failures} cocycle(s) where delta(Delta f) != f^nu - f")

        for n in range(top + 1):
            check = f"nu acts trivially on HH^{n}"
            with rec.guard(check):
                columns = engine.twist_action(nu, n)
                one, zero = engine.field.one(), engine.field.zero()
                identity = all(c == (one if i == j else zero) for j, col in enumerate(columns) for i, c in enumerate(col))
                rec.record(check, identity, samples=len(columns))

    def _bv_identity(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        engine = bundle.engine
        nu = bundle.zoo.nu
        if nu is None:
            rec.skip("BV identity", "no Frobenius form attached")
            return
        for n, m in self._degree_pairs(int(self._setting('bv_total_degree', 3))):
            check = f"degrees ({n}, {m})"
            with rec.guard(check):
                xs, ys = engine.hh_up(nu, n), engine.hh_up(nu, m)
                errors = []
                for i in range(xs.dim):
                    for j in range(ys.dim):
                        report = engine.check_bv_identity(xs.basis_class(i), ys.basis_class(j))
                        errors.extend(report['errors'])
                rec.record(check, not errors, samples=xs.dim * ys.dim, error="; ".join(errors[:3]))

    def _delta_squared(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        engine = bundle.engine
        if bundle.zoo.frobenius is None:
            rec.skip("Delta o Delta = 0", "no Frobenius form attached")
            return
        field = engine.field
        for n in range(2, int(self._setting('delta_squared_degree', 3)) + 1):
            check = f"degree {n}"
            with rec.guard(check):
                upper, lower = engine.bv_matrix(n), engine.bv_matrix(n - 1)
                nonzero = 0
                for row in lower.rows:
                    for j in range(upper.source.dim):
                        total = field.zero()
                        for k, c in enumerate(row):
                            if c:
                                total = total + c * upper.rows[k][j]
                        nonzero += bool(total)
                rec.record(check, nonzero == 0, samples=upper.source.dim,
                           detail={'dims': [upper.source.dim, lower.source.dim, len(lower.rows)]},
                           error=f"{nonzero} nonzero entries in the product")
        self._delta_internal_degree(bundle, rng, rec)

    def _delta_internal_degree(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        zoo = bundle.zoo
        algebra = zoo.algebra
        frobenius = zoo.frobenius
        # only gradings in which eps lives in a single degree
        names = [name for name in sorted(zoo.gradings)
                 if len({zoo.gradings[name].degrees[k] for k in frobenius.eps}) == 1]
        if not names:
            rec.skip("Delta keeps internal degree", "eps is not homogeneous for any attached grading")
            return
        count = int(self._setting('delta_degree_cases', 20))
        with rec.guard("Delta keeps internal degree"):
            failures = []
            for case in range(count):
                grading = zoo.gradings[names[int(rng.integers(len(names)))]]
                n = int(rng.integers(1, 4))
                q = int(rng.integers(-2, 3))
                f = random_homogeneous_cochain(algebra, n, grading, q, rng, pool=self.scalar_pool,
                                               support_factor=self.support_factor)
                image = calculus.bv_delta(f, frobenius)
                for t in self._tuples(algebra, n - 1, rng):
                    target = grading.tuple_degree(t) - q
                    if any(grading.degrees[k] != target for k in image.evaluate(t)):
                        failures.append((grading.name, n, q, t))
                        break
            rec.record("Delta keeps internal degree", not failures, samples=count,
                       error=f"{len(failures)} case(s) leave degree q, first {failures[:1]}")

    def _eps1_tilde(self, bundle: AlgebraBundle) -> Cochain:
        P = bundle.zoo.presentation
        spec = generator_spec(P, 'eps1', 1, bundle.zoo.algebra.field.characteristic)
        return nu_conjugate_average(bundle.zoo, realize_generator(bundle.psi_map, spec))

    def _delta_eps1(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        if not bundle.is_dnr:
            rec.skip("Delta(eps1) = 1/r", "only defined for R(n,r)")
            return
        engine = bundle.engine
        field = engine.field
        r = bundle.zoo.presentation.r
        if field.characteristic and r % field.characteristic == 0:
            rec.skip("Delta(eps1) = 1/r", f"char {field.characteristic} divides r = {r}")
            return
        nu = bundle.zoo.nu
        with rec.guard("Delta(eps1) = 1/r"):
            x = engine.class_of(self._eps1_tilde(bundle), sigma=nu)
            image = engine.induced_bv_on_class(x)
            unit = scale_vector(engine.algebra.unit_vector, field.one() / field(r))
            expected = engine.class_of(Cochain.from_element(engine.algebra.element(unit), name="1/r"), sigma=nu)
            rec.record("Delta(eps1) = 1/r", image == expected,
                       detail={'image': [str(c) for c in image.coordinates],
                               'expected': [str(c) for c in expected.coordinates]})

    def _delta_target(self, bundle: AlgebraBundle, spec) -> Optional[Cochain]:
        """Closed form of Delta(x) for chi and xi, or None for zero."""
        P = bundle.zoo.presentation
        field = bundle.zoo.algebra.field
        characteristic = field.characteristic
        ratio = field(spec.l) / field(P.r)
        s = spec.degree - 1

        def realized(kind: str) -> Optional[Cochain]:
            try:
                target = generator_spec(P, kind, s, characteristic)
            except GeneratorConditionError:
                return None
            return nu_conjugate_average(bundle.zoo, realize_generator(bundle.psi_map, target))

        terms = []
        if spec.kind == 'chi':
            if P.n % 2:
                return None
            f, p = realized('f'), realized('p')
            if f is not None:
                terms.append((ratio * field(P.n) / field(2), f))
            if p is not None:
                terms.append((-ratio, p))
        else:
            h = realized('h')
            if h is not None:
                terms.append((field(2) * ratio, h))
        return linear_combination(terms, name=f"Delta({spec.name})") if terms else None

    def _delta_generators(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        if not bundle.is_dnr:
            rec.skip("Delta on generators", "only defined for R(n,r)")
            return
        zoo = bundle.zoo
        engine = bundle.engine
        frobenius = zoo.frobenius
        nu = zoo.nu
        P = zoo.presentation
        field = zoo.algebra.field
        max_degree = int(self._setting('max_degree', 4))
        stretch = bool(self._setting('stretch', False))

        kinds = DELTA_ZERO_KINDS + (('chi', 'xi') if stretch else ())
        top = max(max_degree, P.period) if stretch else max_degree
        catalogue = [spec for spec in generator_catalogue(P, top, field.characteristic)
                     if spec.kind in kinds and spec.degree >= 1
                     and (spec.kind in ('chi', 'xi') or spec.degree <= max_degree)]
        if not catalogue:
            rec.skip("Delta on generators", f"no generators of these kinds up to degree {top}")
            return

        for spec in catalogue:
            check = f"Delta({spec.name})"
            with rec.guard(check):
                engine.require_budget(spec.degree - 1)
                x = nu_conjugate_average(zoo, realize_generator(bundle.psi_map, spec))
                image = calculus.bv_delta(x, frobenius)
                if spec.kind in ('chi', 'xi'):
                    if field.characteristic and P.r % field.characteristic == 0:
                        rec.skip(check, f"char {field.characteristic} divides r")
                        continue
                    target = self._delta_target(bundle, spec)
                    if target is not None:
                        image = linear_combination([(1, image), (-1, target)], name=f"{image.name}-closed")
                witness = engine.is_coboundary(image, sigma=nu)
                rec.record(check, witness is not None, detail={'degree': spec.degree},
                           error="Delta of the generator differs from its closed form in HH^{nu up}")

    def _theta(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        zoo = bundle.zoo
        engine = bundle.engine
        top = int(self._setting('theta_degree', 2))
        samples = int(self._setting('theta_samples', 6))
        characteristic = engine.field.characteristic

        automorphisms = ([('nu', zoo.nu)] if zoo.nu is not None else []) + sorted(zoo.automorphisms.items())
        if not automorphisms:
            rec.skip("Theta", "no automorphisms attached")
            return

        for name, sigma in automorphisms:
            order = sigma.order(engine.order_bound)
            asserted = order is not None and (characteristic == 0 or order % characteristic != 0)
            for n in range(top + 1):
                check = f"Theta {name} degree {n}"
                with rec.guard(check):
                    theta = engine.theta(sigma, n)
                    detail = {'order': order, 'source': theta.source.dim, 'fixed': theta.fixed_dim,
                              'rank': theta.rank, 'asserted': asserted}
                    passed = theta.bijective and theta.source.dim == theta.fixed_dim if asserted else True
                    rec.record(check, passed, detail=detail, error="not bijective although char k does not divide ord")

            check = f"Theta {name} multiplicative"
            with rec.guard(check):
                failures, tried = [], 0
                pairs = self._degree_pairs(top)
                for case in range(samples):
                    a, b = pairs[int(rng.integers(len(pairs)))]
                    xs, ys = engine.hh_up(sigma, a), engine.hh_up(sigma, b)
                    if not xs.dim or not ys.dim:
                        continue
                    x = xs.basis_class(int(rng.integers(xs.dim)))
                    y = ys.basis_class(int(rng.integers(ys.dim)))
                    tried += 1
                    product = engine.cup_classes(x, y)
                    if not engine.same_class(calculus.cup(x.representative(), y.representative()),
                                             product.representative()):
                        failures.append(('cup', a, b))
                    if a + b >= 1:
                        product = engine.bracket_classes(x, y)
                        if not engine.same_class(calculus.bracket(x.representative(), y.representative()),
                                                 product.representative()):
                            failures.append(('bracket', a, b))
                rec.record(check, not failures, samples=tried, error=f"fails for {failures[:3]}")

    def _char_robustness(self, bundle: AlgebraBundle, rng: np.random.Generator, rec: _SuiteRecorder) -> None:
        request = bundle.request
        if request.family is None:
            rec.skip("characteristic robustness", "algebra loaded from a file")
            return
        top = int(self._setting('char_robustness_degree', 2))
        pipeline = AlgebraPipeline(self.config, self.logger)
        dims: Dict[str, List[int]] = {}
        for field_name in ROBUSTNESS_FIELDS:
            check = f"hh_dim over {field_name}"
            with rec.guard(check):
                other = bundle if field_name == request.field else pipeline.build(request.with_field(field_name))
                dims[field_name] = [other.engine.hh_dim(n) for n in range(top + 1)]
                rec.record(check, True, samples=top + 1, detail={'dims': dims[field_name]})

        if 'Q' in dims and 'Fp:3' in dims:
            equal = dims['Q'] == dims['Fp:3']
            if bundle.is_dnr:
                rec.record("Q and F_3 agree", equal, detail={'Q': dims['Q'], 'F3': dims['Fp:3']},
                           error=f"Q {dims['Q']} != F_3 {dims['Fp:3']}")
            elif not equal:
                rec.warnings.append(f"hh dims differ between Q {dims['Q']} and F_3 {dims['Fp:3']}")
