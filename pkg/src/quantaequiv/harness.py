"""Suite runner: seeded check batteries, JSON reports, numeric tables.

Six suites cover both sides of the build: exact algebra and functor laws on
the character side, numeric defect and morphism batteries on the grid side.
Every check is deterministic given the config seed; reports differ between
identical runs only in their timestamp field.
"""

import datetime
import json
import math
import os
import platform
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import jsonschema
import numpy as np
import scipy

from .weyl_algebra import (
    CoeffExpr,
    evaluate_at,
    involution,
    multiply,
    poisson_bracket,
    weyl_from_json,
    weyl_generator,
    weyl_to_json,
    weyl_unit,
)
from .symplectic import symplectic_form
from .weyl_functors import (
    classical_limit_morphism,
    dirac_defect,
    k0_membership,
    quantize_morphism,
    rieffel_condition_check,
    von_neumann_defect,
)
from .weyl_equivalence import (
    classical_category,
    limit_functor,
    quantization_functor,
    quantize_arrow_pool,
    quantum_category,
    sample_classical_arrows,
    unit_transformation,
    counit_transformation,
)
from .category import check_category_laws, check_functor_laws, check_equivalence, violations
from .sampling import (
    make_rng,
    random_coeff,
    random_element,
    random_label,
    random_section,
    random_space_pool,
)
from .rieffel import (
    AffineSymplecticMap,
    Grid2n,
    GridFunction,
    convergence_study,
    dirac_defect_grid,
    equivariance_defect,
    gaussian_star_closed_form,
    morphism_star_defect,
    moyal_product,
    moyal_quadrature_oracle,
    oscillator_position,
    von_neumann_defect_grid,
    weyl_homomorphism_residual,
    weyl_transform,
)

SCHEMA_VERSION = 1

SUITE_NAMES = (
    "weyl-laws",
    "weyl-sdq",
    "equivalence-weyl",
    "rieffel-sdq",
    "rieffel-morphisms",
    "weyl-transform",
)

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "suite": {"enum": list(SUITE_NAMES)},
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
        "sample_count": {"type": "integer", "minimum": 1},
        "schedule": {
            "type": "array",
            "items": {"type": ["number", "string"]},
            "minItems": 4,
        },
        "grid_points": {"type": "integer", "minimum": 32},
        "grid_extent": {"type": "number", "exclusiveMinimum": 0},
        "hbar": {"type": "number", "exclusiveMinimum": 0},
        "truncations": {
            "type": "array",
            "items": {"type": "integer", "minimum": 16},
            "minItems": 2,
        },
        "max_pairs": {"type": "integer", "minimum": 1},
    },
    "required": ["suite", "seed"],
    "additionalProperties": False,
}


class ConfigError(ValueError):
    pass


def default_config(suite):
    base = {"schema_version": SCHEMA_VERSION, "suite": suite, "seed": 20260816}
    if suite == "weyl-laws":
        base["sample_count"] = 1002
    elif suite == "weyl-sdq":
        base["sample_count"] = 100
        base["schedule"] = ["1/2", "1/4", "1/8", "1/16"]
    elif suite == "equivalence-weyl":
        base["sample_count"] = 100
        base["max_pairs"] = 200
    elif suite == "rieffel-sdq":
        base.update(
            {"grid_points": 256, "grid_extent": 20.0, "hbar": 0.1,
             "schedule": [0.4, 0.2, 0.1, 0.05]}
        )
    elif suite == "rieffel-morphisms":
        base.update({"grid_points": 256, "grid_extent": 20.0, "hbar": 0.1})
    elif suite == "weyl-transform":
        base.update(
            {"grid_points": 256, "grid_extent": 20.0, "hbar": 0.1,
             "truncations": [32, 64, 128]}
        )
    else:
        raise ConfigError("unknown suite %r" % (suite,))
    return base


def _parse_schedule(raw):
    out = []
    for item in raw:
        if isinstance(item, str):
            out.append(Fraction(item))
        else:
            out.append(item)
    return out


def validate_config(config):
    try:
        jsonschema.validate(config, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError("config schema violation: %s" % exc.message) from exc
    if "schedule" in config:
        try:
            values = [float(v) for v in _parse_schedule(config["schedule"])]
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError("unreadable schedule entry: %s" % exc) from exc
        if any(v <= 0 for v in values):
            raise ConfigError("schedule entries must be positive")
        if any(b >= a for a, b in zip(values, values[1:])):
            raise ConfigError("schedule must be strictly decreasing")
    if "truncations" in config:
        t = config["truncations"]
        if any(b <= a for a, b in zip(t, t[1:])):
            raise ConfigError("truncations must be strictly increasing")
    return config


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc)) from exc
    return validate_config(raw)


def resolve_config(config):
    """Fill defaults for the config's suite; explicit fields win."""
    validate_config(config)
    merged = default_config(config["suite"])
    merged.update(config)
    return merged


# --- check plumbing -----------------------------------------------------------


def _record(check_id, passed, value=None, tolerance=None, witness=None, saturated=False):
    status = "saturated" if saturated else ("pass" if passed else "fail")
    rec = {"id": check_id, "status": status}
    if value is not None:
        rec["value"] = value
    if tolerance is not None:
        rec["tolerance"] = tolerance
    if witness is not None:
        rec["witness"] = witness
    if status == "fail" and witness is None:
        rec["witness"] = {"detail": "no extra context"}
    return rec


def _worker_count():
    raw = os.environ.get("QUANTAEQUIV_THREADS", "")
    if raw.strip():
        try:
            n = int(raw)
        except ValueError:
            n = 1
        return max(1, n)
    return min(4, os.cpu_count() or 1)


def _run_checks(checks):
    workers = _worker_count()
    if workers == 1:
        results = [fn() for _, fn in checks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda item: item[1](), checks))
    flat = []
    for item in results:
        if isinstance(item, list):
            flat.extend(item)
        else:
            flat.append(item)
    return sorted(flat, key=lambda rec: rec["id"])


def _environment_stamp():
    return {
        "numpy": np.__version__,
        "platform": sys.platform,
        "machine": platform.machine(),
        "python": platform.python_version(),
        "scipy": scipy.__version__,
    }


# --- weyl-laws ----------------------------------------------------------------


def _laws_tuples(seed, tag, count, width, max_terms=4):
    """Same-space element tuples: products need one shared space per tuple."""
    rng = make_rng(seed, "weyl-laws", tag)
    spaces = random_space_pool(rng, 4, dims=(2, 4))
    for i in range(count):
        space = spaces[i % len(spaces)]
        yield tuple(
            random_element(rng, space, max_terms=max_terms) for _ in range(width)
        )


def _suite_weyl_laws(config):
    seed = config["seed"]
    count = config["sample_count"]

    def associativity():
        bad = 0
        witness = None
        for i, (a, b, c) in enumerate(_laws_tuples(seed, "assoc", count // 3 + 1, 3)):
            if multiply(multiply(a, b), c) != multiply(a, multiply(b, c)):
                bad += 1
                witness = witness or {"index": i}
        return _record(
            "law-01-associativity", bad == 0, value=bad, tolerance=0, witness=witness
        )

    def unit_laws():
        bad = 0
        for (a,) in _laws_tuples(seed, "unit", count, 1):
            one = weyl_unit(a.space, a.hbar)
            if multiply(one, a) != a or multiply(a, one) != a:
                bad += 1
        return _record("law-02-unit", bad == 0, value=bad, tolerance=0)

    def involution_laws():
        bad = 0
        for a, b in _laws_tuples(seed, "star", count // 2 + 1, 2):
            if involution(multiply(a, b)) != multiply(involution(b), involution(a)):
                bad += 1
            if involution(involution(a)) != a:
                bad += 1
        return _record("law-03-involution", bad == 0, value=bad, tolerance=0)

    def zero_fiber_commutativity():
        bad = 0
        for a, b in _laws_tuples(seed, "commute", count // 2 + 1, 2):
            a0 = evaluate_at(a, 0)
            b0 = evaluate_at(b, 0)
            if multiply(a0, b0) != multiply(b0, a0):
                bad += 1
        return _record("law-04-zero-fiber-commutative", bad == 0, value=bad, tolerance=0)

    def poisson_axioms():
        anti = jacobi = leibniz = 0
        triple_count = max(500, count // 2)
        for raw in _laws_tuples(seed, "poisson", triple_count, 3, max_terms=2):
            a, b, c = (evaluate_at(el, 0) for el in raw)
            if poisson_bracket(a, b) != poisson_bracket(b, a).scale_coeff(
                CoeffExpr.rational(-1)
            ):
                anti += 1
            cyc = (
                poisson_bracket(a, poisson_bracket(b, c))
                + poisson_bracket(b, poisson_bracket(c, a))
                + poisson_bracket(c, poisson_bracket(a, b))
            )
            if cyc != cyc - cyc:
                jacobi += 1
            if poisson_bracket(a, multiply(b, c)) != (
                multiply(poisson_bracket(a, b), c) + multiply(b, poisson_bracket(a, c))
            ):
                leibniz += 1
        total_bad = anti + jacobi + leibniz
        return _record(
            "law-05-poisson-axioms",
            total_bad == 0,
            value=total_bad,
            tolerance=0,
            witness={"antisymmetry": anti, "jacobi": jacobi, "leibniz": leibniz},
        )

    def serialization_round_trip():
        bad = 0
        for (a,) in _laws_tuples(seed, "json", 100, 1):
            if weyl_from_json(weyl_to_json(a)) != a:
                bad += 1
        return _record("law-06-serialization", bad == 0, value=bad, tolerance=0)

    return [
        ("law-01-associativity", associativity),
        ("law-02-unit", unit_laws),
        ("law-03-involution", involution_laws),
        ("law-04-zero-fiber-commutative", zero_fiber_commutativity),
        ("law-05-poisson-axioms", poisson_axioms),
        ("law-06-serialization", serialization_round_trip),
    ]


# --- weyl-sdq -----------------------------------------------------------------


def _normalized_generator_pairs(seed, count):
    """Generator pairs with |sigma| scaled into [1/2, 2]."""
    rng = make_rng(seed, "weyl-sdq", "pairs")
    spaces = random_space_pool(rng, 4, dims=(2, 4))
    pairs = []
    while len(pairs) < count:
        space = spaces[len(pairs) % len(spaces)]
        f = random_label(rng, space)
        g = random_label(rng, space)
        sigma = symplectic_form(space, f, g)
        if sigma == 0:
            continue
        while abs(sigma) > 2:
            f = tuple(x / 2 for x in f)
            sigma = sigma / 2
        while abs(sigma) < Fraction(1, 2):
            f = tuple(x * 2 for x in f)
            sigma = sigma * 2
        pairs.append((space, f, g, sigma))
    return pairs


def _fit_slope(hs, ds):
    xs = np.log(np.asarray(hs, dtype=float))
    ys = np.log(np.asarray(ds, dtype=float))
    return float(np.polyfit(xs, ys, 1)[0])


def _suite_weyl_sdq(config):
    seed = config["seed"]
    count = config["sample_count"]
    schedule = _parse_schedule(config["schedule"])

    def closed_forms():
        pairs = _normalized_generator_pairs(seed, count)
        hs = [float(h) for h in schedule]
        worst_vn = 0.0
        worst_dirac = 0.0
        vn_slopes = []
        dirac_slopes = []
        vn_envelope = [0.0] * len(hs)
        dirac_envelope = [0.0] * len(hs)
        for space, f, g, sigma in pairs:
            s = float(sigma)
            vn_values = []
            dirac_values = []
            for k, h in enumerate(schedule):
                hf = float(h)
                vn = von_neumann_defect(space, f, g, h)
                ref = 2.0 * abs(math.sin(hf * s / 4.0))
                worst_vn = max(worst_vn, abs(vn - ref))
                vn_values.append(vn)
                vn_envelope[k] = max(vn_envelope[k], vn)
                di = dirac_defect(space, f, g, h)
                ref2 = abs((2.0 / hf) * math.sin(hf * s / 2.0) - s)
                worst_dirac = max(worst_dirac, abs(di - ref2))
                dirac_values.append(di)
                dirac_envelope[k] = max(dirac_envelope[k], di)
            vn_slopes.append(_fit_slope(hs, vn_values))
            dirac_slopes.append(_fit_slope(hs, dirac_values))
        checks = []
        checks.append(
            _record("sdq-01-von-neumann-closed-form", worst_vn <= 1e-12,
                    value=worst_vn, tolerance=1e-12,
                    witness={"rows": [[h, d] for h, d in zip(hs, vn_envelope)]})
        )
        checks.append(
            _record("sdq-02-dirac-closed-form", worst_dirac <= 1e-12,
                    value=worst_dirac, tolerance=1e-12,
                    witness={"rows": [[h, d] for h, d in zip(hs, dirac_envelope)]})
        )
        vn_dev = max(abs(s - 1.0) for s in vn_slopes)
        dirac_dev = max(abs(s - 2.0) for s in dirac_slopes)
        checks.append(
            _record("sdq-03-von-neumann-order", vn_dev <= 0.05,
                    value=vn_dev, tolerance=0.05)
        )
        checks.append(
            _record("sdq-04-dirac-order", dirac_dev <= 0.05,
                    value=dirac_dev, tolerance=0.05)
        )
        return checks

    def k0_brute_force():
        rng = make_rng(seed, "weyl-sdq", "k0")
        spaces = random_space_pool(rng, 4, dims=(2, 4))
        vanishing_factor = CoeffExpr.phase(0, Fraction(1, 1)) - CoeffExpr.one()
        disagreements = 0
        witness = None
        for i in range(count):
            space = spaces[i % len(spaces)]
            section = random_section(rng, space)
            if i % 2 == 0:
                section = section.scale_coeff(vanishing_factor)
            claimed = k0_membership(section)
            measured = all(
                _limit_magnitude(c) < 1e-9 for c in section.terms.values()
            )
            if claimed != measured:
                disagreements += 1
                witness = witness or {
                    "index": i,
                    "claimed": claimed,
                    "measured": measured,
                }
        return _record(
            "sdq-05-k0-brute-force", disagreements == 0,
            value=disagreements, tolerance=0, witness=witness,
        )

    def rieffel_constancy():
        rng = make_rng(seed, "weyl-sdq", "rieffel")
        spaces = random_space_pool(rng, 4, dims=(2, 4))
        bad = 0
        for i in range(50):
            space = spaces[i % len(spaces)]
            base = evaluate_at(weyl_generator(space, random_label(rng, space)), 0)
            coeff = random_coeff(rng, max_terms=2, with_parameter=False)
            element = base.scale_coeff(coeff)
            if not rieffel_condition_check(element, schedule):
                bad += 1
        return _record("sdq-06-rieffel-constancy", bad == 0, value=bad, tolerance=0)

    return [
        ("sdq-closed-forms", closed_forms),
        ("sdq-05-k0-brute-force", k0_brute_force),
        ("sdq-06-rieffel-constancy", rieffel_constancy),
    ]


def _limit_magnitude(coeff):
    """|coeff(0)| by Richardson extrapolation down a dyadic schedule."""
    values = [coeff.value_at(2.0**-k) for k in range(21)]
    first = [2 * b - a for a, b in zip(values, values[1:])]
    second = [(4 * b - a) / 3 for a, b in zip(first, first[1:])]
    return abs(second[-1])


# --- equivalence-weyl ---------------------------------------------------------


def _violation_witness(bad):
    if not bad:
        return None
    first = bad[0]
    return {"law": first.get("law"), "sample_id": str(first.get("sample_id"))}


def _suite_equivalence_weyl(config):
    seed = config["seed"]
    count = max(config["sample_count"], 100)
    max_pairs = config["max_pairs"]

    def run_battery():
        arrows = sample_classical_arrows(seed, count)
        quantized = quantize_arrow_pool(arrows)
        checks = []

        report = check_category_laws(classical_category(), arrows, max_pairs, max_pairs)
        bad = violations(report)
        checks.append(
            _record("eq-01-classical-category", not bad, value=len(bad), tolerance=0,
                    witness=_violation_witness(bad))
        )

        report = check_category_laws(quantum_category(), quantized, max_pairs, max_pairs)
        bad = violations(report)
        checks.append(
            _record("eq-02-quantum-category", not bad, value=len(bad), tolerance=0,
                    witness=_violation_witness(bad))
        )

        report = check_functor_laws(quantization_functor(), arrows, max_pairs)
        bad = violations(report)
        checks.append(
            _record("eq-03-quantization-functor", not bad, value=len(bad), tolerance=0,
                    witness=_violation_witness(bad))
        )

        report = check_functor_laws(limit_functor(), quantized, max_pairs)
        bad = violations(report)
        checks.append(
            _record("eq-04-limit-functor", not bad, value=len(bad), tolerance=0,
                    witness=_violation_witness(bad))
        )

        report = check_equivalence(
            quantization_functor(),
            limit_functor(),
            unit_transformation(),
            counit_transformation(),
            arrows,
            quantized,
        )
        bad = violations(report)
        checks.append(
            _record("eq-05-naturality-invertibility", not bad, value=len(bad),
                    tolerance=0, witness=_violation_witness(bad))
        )

        round_trip_bad = 0
        for record in arrows:
            m = record.payload
            if classical_limit_morphism(quantize_morphism(m)) != m:
                round_trip_bad += 1
        for record in quantized:
            q = record.payload
            if quantize_morphism(classical_limit_morphism(q)) != q:
                round_trip_bad += 1
        checks.append(
            _record("eq-06-arrow-round-trips", round_trip_bad == 0,
                    value=round_trip_bad, tolerance=0)
        )
        return checks

    return [("eq-battery", run_battery)]


# --- rieffel-sdq ----------------------------------------------------------------


GAUSSIAN_PAIRS = (
    (((0.8, 0.0), 0.5), ((-0.5, 0.4), 1.0 / 3.0)),
    (((0.5, 0.0), 1.0), ((-0.4, 0.3), 1.0)),
    (((0.0, 0.7), 0.8), ((0.6, -0.2), 0.6)),
)


def _suite_rieffel_sdq(config):
    grid = Grid2n(1, config["grid_points"], config["grid_extent"])
    hbar = config["hbar"]
    schedule = tuple(float(v) for v in config["schedule"])

    def closed_form_check():
        a, b = 0.5, 1.0 / 3.0
        f = GridFunction.gaussian(grid, (0.0, 0.0), a)
        g = GridFunction.gaussian(grid, (0.0, 0.0), b)
        got = moyal_product(f, g, hbar)
        amp, decay = gaussian_star_closed_form(a, b, hbar)
        ref = GridFunction.gaussian(grid, (0.0, 0.0), decay, amplitude=amp)
        value = (got - ref).sup_norm() / ref.sup_norm()
        return _record("rsdq-01-closed-form", value <= 1e-6, value=value, tolerance=1e-6)

    def oracle_check():
        (c1, a), (c2, b) = GAUSSIAN_PAIRS[0]
        f = GridFunction.gaussian(grid, c1, a)
        g = GridFunction.gaussian(grid, c2, b)
        product = moyal_product(f, g, hbar)
        ax = grid.axis_coordinates()
        quarter = len(ax) // 4
        idx = [
            (quarter * 2, quarter * 2),
            (quarter * 2 + 7, quarter * 2 - 5),
            (quarter * 2 - 13, quarter * 2 + 11),
            (quarter * 2 + 17, quarter * 2 + 3),
            (quarter * 2 - 6, quarter * 2 - 16),
        ]
        pts = [(float(ax[i]), float(ax[j])) for i, j in idx]
        oracle = moyal_quadrature_oracle(
            lambda x, p: np.exp(-a * ((x - c1[0]) ** 2 + (p - c1[1]) ** 2)),
            lambda x, p: np.exp(-b * ((x - c2[0]) ** 2 + (p - c2[1]) ** 2)),
            hbar,
            pts,
        )
        diffs = [abs(o - product.samples[i, j]) for o, (i, j) in zip(oracle, idx)]
        scale = max(abs(product.samples[i, j]) for i, j in idx)
        value = max(diffs) / scale
        return _record("rsdq-02-quadrature-oracle", value <= 1e-6, value=value,
                       tolerance=1e-6)

    def study_check(kind, index):
        (c1, a), (c2, b) = GAUSSIAN_PAIRS[index]
        f = GridFunction.gaussian(grid, c1, a)
        g = GridFunction.gaussian(grid, c2, b)
        if kind == "vn":
            study = convergence_study(von_neumann_defect_grid, f, g, schedule)
            low, high, target = 0.8, 1.2, 1.0
            check_id = "rsdq-03-von-neumann-slope-pair%d" % (index + 1)
        else:
            study = convergence_study(dirac_defect_grid, f, g, schedule)
            low, high, target = 1.8, 2.2, 2.0
            check_id = "rsdq-04-dirac-slope-pair%d" % (index + 1)
        slope = study["slope"]
        passed = (low <= slope <= high) and not study["saturated"]
        witness = {"rows": [[h, d] for h, d in study["rows"]], "target": target}
        return _record(check_id, passed, value=slope, tolerance=[low, high],
                       witness=witness, saturated=study["saturated"])

    checks = [
        ("rsdq-01-closed-form", closed_form_check),
        ("rsdq-02-quadrature-oracle", oracle_check),
    ]
    for idx in range(3):
        checks.append(
            ("rsdq-03-vn-%d" % idx, lambda kind="vn", i=idx: study_check(kind, i))
        )
        checks.append(
            ("rsdq-04-dirac-%d" % idx, lambda kind="dirac", i=idx: study_check(kind, i))
        )
    return checks


# --- rieffel-morphisms ----------------------------------------------------------


def _suite_rieffel_morphisms(config):
    grid = Grid2n(1, config["grid_points"], config["grid_extent"])
    hbar = config["hbar"]
    f = GridFunction.gaussian(grid, (0.5, 0.0), 1.0)
    g = GridFunction.gaussian(grid, (-0.4, 0.3), 1.0)

    symplectic_maps = (
        ("rot30", AffineSymplecticMap.rotation(math.pi / 6)),
        ("rot90", AffineSymplecticMap.rotation(math.pi / 2)),
        ("rot137", AffineSymplecticMap.rotation(2.4)),
        ("shear-upper", AffineSymplecticMap.shear(0.3)),
        ("shear-lower", AffineSymplecticMap.shear(-0.2, upper=False)),
    )

    def symplectic_check(name, phi):
        value = morphism_star_defect(phi, f, g, hbar, boundary_threshold=1e-9)
        return _record("morph-01-star-%s" % name, value <= 1e-3, value=value,
                       tolerance=1e-3)

    def control_check():
        phi = AffineSymplecticMap(np.diag([2.0, 2.0]))
        value = morphism_star_defect(phi, f, g, hbar,
                                     boundary_threshold=float("inf"))
        return _record("morph-02-scaling-control", value >= 1e-1, value=value,
                       tolerance=1e-1,
                       witness={"expectation": "defect stays large"})

    def equivariance_check():
        phi = AffineSymplecticMap.rotation(math.pi / 6)
        value = equivariance_defect(phi, f, (0.6, -0.4), boundary_threshold=1e-9)
        return _record("morph-03-equivariance", value <= 1e-8, value=value,
                       tolerance=1e-8)

    checks = [
        ("morph-01-%s" % name, lambda n=name, p=phi: symplectic_check(n, p))
        for name, phi in symplectic_maps
    ]
    checks.append(("morph-02-control", control_check))
    checks.append(("morph-03-equivariance", equivariance_check))
    return checks


# --- weyl-transform -------------------------------------------------------------


def _suite_weyl_transform(config):
    grid = Grid2n(1, config["grid_points"], config["grid_extent"])
    hbar = config["hbar"]
    truncations = config["truncations"]
    reference = truncations[min(1, len(truncations) - 1)]

    def window_fn(x, p):
        r2 = (x * x + p * p) / 2.8**2
        return np.exp(-(r2**12))

    def window_identity():
        w = GridFunction.from_callable(grid, window_fn)
        mat = weyl_transform(w, hbar, reference)
        value = float(np.max(np.abs(mat.entries[:10, :10] - np.eye(10))))
        return _record("wt-01-window-identity", value <= 1e-6, value=value,
                       tolerance=1e-6)

    def windowed_position():
        w = GridFunction.from_callable(grid, window_fn)
        xw = GridFunction.from_callable(grid, lambda x, p: x) * w
        mat = weyl_transform(xw, hbar, reference)
        ref = oscillator_position(reference, hbar)
        value = float(np.max(np.abs(mat.entries[:10, :10] - ref[:10, :10])))
        return _record("wt-02-windowed-position", value <= 1e-6, value=value,
                       tolerance=1e-6)

    transform_pairs = (
        (((0.5, 0.0), 1.0), ((-0.4, 0.3), 2.0 / 3.0)),
        (((0.8, 0.0), 0.5), ((-0.5, 0.4), 1.0 / 3.0)),
    )

    def intertwining(index):
        (c1, a), (c2, b) = transform_pairs[index]
        f = GridFunction.gaussian(grid, c1, a)
        g = GridFunction.gaussian(grid, c2, b)
        star = moyal_product(f, g, hbar)
        residuals = {}
        for n in truncations:
            wf = weyl_transform(f, hbar, n, support_tail=1.0)
            wg = weyl_transform(g, hbar, n, support_tail=1.0)
            ws = weyl_transform(star, hbar, n, support_tail=1.0)
            residuals[n] = weyl_homomorphism_residual(ws, wf, wg)
        ordered = [residuals[n] for n in truncations]
        monotone = all(a > b for a, b in zip(ordered, ordered[1:]))
        small = residuals[reference] <= 1e-3
        witness = {"residuals": [[n, residuals[n]] for n in truncations]}
        return _record("wt-03-intertwining-pair%d" % (index + 1), monotone and small,
                       value=residuals[reference], tolerance=1e-3, witness=witness)

    checks = [
        ("wt-01-window-identity", window_identity),
        ("wt-02-windowed-position", windowed_position),
    ]
    for idx in range(len(transform_pairs)):
        checks.append(("wt-03-pair%d" % idx, lambda i=idx: intertwining(i)))
    return checks


# --- runner and tables ----------------------------------------------------------


_SUITE_BUILDERS = {
    "weyl-laws": _suite_weyl_laws,
    "weyl-sdq": _suite_weyl_sdq,
    "equivalence-weyl": _suite_equivalence_weyl,
    "rieffel-sdq": _suite_rieffel_sdq,
    "rieffel-morphisms": _suite_rieffel_morphisms,
    "weyl-transform": _suite_weyl_transform,
}


def run_suite(config):
    """Execute one suite and return its report dictionary."""
    config = resolve_config(config)
    builders = _SUITE_BUILDERS[config["suite"]]
    raw = _run_checks(builders(config))
    records = []
    for item in raw:
        if isinstance(item, list):
            records.extend(item)
        else:
            records.append(item)
    records.sort(key=lambda rec: rec["id"])
    summary = {
        "total": len(records),
        "passed": sum(1 for r in records if r["status"] == "pass"),
        "failed": sum(1 for r in records if r["status"] == "fail"),
        "saturated": sum(1 for r in records if r["status"] == "saturated"),
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "suite": config["suite"],
        "seed": config["seed"],
        "config": config,
        "environment": _environment_stamp(),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "checks": records,
        "summary": summary,
    }


def report_to_json(report):
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _slope_windows(rows):
    cells = [""]
    for (h0, d0), (h1, d1) in zip(rows, rows[1:]):
        if d0 > 0 and d1 > 0:
            cells.append("%.12g" % (math.log(d1 / d0) / math.log(h1 / h0)))
        else:
            cells.append("")
    return cells

def emit_tables(report, out_dir, fmt="csv"):
    """Write the report's numeric tables; returns the created paths."""
    if fmt not in ("csv", "json"):
        raise ConfigError("unknown table format %r" % (fmt,))
    os.makedirs(out_dir, exist_ok=True)
    written = []
    if fmt == "json":
        path = os.path.join(out_dir, "%s.report.json" % report["suite"])
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report_to_json(report))
        written.append(path)
        return written

    any_rows = False
    for check in report["checks"]:
        witness = check.get("witness") or {}
        rows = witness.get("rows")
        if not rows:
            continue
        any_rows = True
        path = os.path.join(out_dir, "%s.%s.csv" % (report["suite"], check["id"]))
        windows = _slope_windows([(r[0], r[1]) for r in rows])
        lines = ["hbar,defect,slope_window"]
        for (h, d), win in zip(rows, windows):
            lines.append("%.12g,%.17g,%s" % (h, d, win))
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        written.append(path)
    if not any_rows:
        path = os.path.join(out_dir, "%s.tables.csv" % report["suite"])
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("hbar,defect,slope_window\n")
        written.append(path)
    return written
