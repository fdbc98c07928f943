"""Command-line surface: every computation as a reproducible experiment.

Each subcommand prints one report object to stdout — JSON by default,
CSV on request — of the shape

    {command, params, values, meta: {trunc, residual, runtime_ms}}

with numbers serialized at 17 significant digits.  Exit codes: 0 on
success, 2 for invalid parameters, 3 for numeric non-convergence.
Diagnostics go to stderr.  The CSV form is the values table plus
constant command/meta columns (params stay JSON-only).
"""

import argparse
import math
import sys
import time

import numpy as np

from .bergman import (
    bergman_norm_sq,
    default_trunc,
    dirichlet_norm_sq,
    disk_quadrature_norm_sq,
    growth_norm,
)
from .errors import DomainError, InvalidInputError, NumericError
from .halfplane import (
    density_norm_sq,
    halfplane_norm_sq,
    hardy_check,
    hardy_constant,
    power_exp_density,
)
from .multiplier import (
    MultiplierSpec,
    claim_boundedness_probe,
    compression_norm_sq,
    g0_norm_sq,
    koebe_norm_sq,
    operator_matrix,
    preset_symbol,
    test_family_rayleigh,
    volterra_i_norm_sq,
    volterra_j_norm_sq,
)
from .schwarzian import (
    critical_points_on_circle,
    laurent_leading,
    pre_schwarzian,
    schwarzian_rational,
)
from .series import (
    Polynomial,
    PowerSeries,
    RationalMap,
    parse_carrier,
    parse_complex,
    rational_derivative,
    rational_to_series,
)
from .spectrum import spectrum_slope
from .specfun import binomial_coeffs, log_gamma

_PRESETS = ("one", "koebe-schwarzian", "g0", "g1", "g2", "g3")

_MAP_PRESETS = {
    "identity": lambda: RationalMap([0.0, 1.0], [1.0]),
    "koebe-map": lambda: RationalMap([0.0, 1.0], [1.0, -2.0, 1.0]),
}

KOEBE_FORMULA = "36*(alpha+3)*(alpha+5)/((alpha+2)*(alpha+4))"
G0_FORMULA = (
    "2^(alpha-beta)*Gamma(beta+2)/Gamma(alpha+2)"
    "*(Gamma(1+alpha/2)/Gamma(1+beta/2))^2"
)
HARDY_FORMULA = "(Gamma(1-(a+1)/p)/Gamma(order+1-(a+1)/p))^p"


# ---------------------------------------------------------------------------
# serialization: fixed float formatting so identical configs give
# byte-identical value output
# ---------------------------------------------------------------------------


def _fmt_num(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return f'"{x!r}"'
    if x == 0.0:
        return "0"
    return f"{x:.17g}"


def _json_escape(s):
    out = []
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return '"' + "".join(out) + '"'


def _to_json(obj):
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return _json_escape(obj)
    if isinstance(obj, dict):
        parts = (f"{_json_escape(str(k))}: {_to_json(v)}" for k, v in obj.items())
        return "{" + ", ".join(parts) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    if isinstance(obj, complex):
        return _to_json({"re": obj.real, "im": obj.imag})
    return _fmt_num(obj)


def _to_csv(rows, command, meta):
    if not rows:
        rows = [{}]
    field_names = list(rows[0].keys())
    header = ["command", *field_names, "trunc", "residual", "runtime_ms"]
    lines = [",".join(header)]
    for row in rows:
        cells = [command]
        for name in field_names:
            value = row.get(name)
            cells.append(value if isinstance(value, str) else _fmt_num(value))
        cells.extend(
            [_fmt_num(meta["trunc"]), _fmt_num(meta["residual"]), _fmt_num(meta["runtime_ms"])]
        )
        lines.append(",".join(cells))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def _float_list(text):
    try:
        return [float(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InvalidInputError(f"cannot parse number list from {text!r}") from exc


def _default_lambda_grid(alpha):
    return [alpha / 2.0 + 1.0 + 10.0**-k for k in range(1, 5)]


def _parse_symbol(text, alpha, beta):
    text = text.strip()
    if text in _PRESETS:
        return preset_symbol(text, alpha, beta if beta is not None else alpha + 4.0)
    return parse_carrier(text)


def _parse_map(text):
    text = text.strip()
    if text in _MAP_PRESETS:
        return _MAP_PRESETS[text]()
    carrier = parse_carrier(text)
    if isinstance(carrier, Polynomial):
        return RationalMap(carrier.coeffs, [1.0])
    if isinstance(carrier, RationalMap):
        return carrier
    raise InvalidInputError("maps must be polynomial or rational (poly:/rat: literal)")


def _expand_symbol(symbol, trunc):
    if isinstance(symbol, RationalMap):
        return rational_to_series(symbol, trunc)
    if isinstance(symbol, Polynomial):
        coeffs = symbol.coeffs if not symbol.is_zero() else np.zeros(1, dtype=np.complex128)
        return PowerSeries(coeffs).extended(trunc)
    return PowerSeries(symbol.coeffs[: trunc + 1])


def _complex_obj(z):
    return {"re": float(z.real), "im": float(z.imag)}


def _poly_rows(label, poly):
    return [
        {"part": label, "index": i, "re": float(c.real), "im": float(c.imag)}
        for i, c in enumerate(poly.coeffs)
    ]


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (params, values, rows, trunc, residual)
# ---------------------------------------------------------------------------


def _cmd_koebe_table(args):
    rows = [
        {"alpha": a, "norm_sq": koebe_norm_sq(a)}
        for a in args.alpha
    ]
    params = {"alpha": args.alpha, "formula": KOEBE_FORMULA, "seed": args.seed}
    return params, {"rows": rows}, rows, 0, 0.0


def _cmd_g0_table(args):
    betas = args.beta if args.beta else [a + 4.0 for a in args.alpha]
    rows = []
    for a in args.alpha:
        for b in betas:
            rows.append({"alpha": a, "beta": b, "norm_sq": g0_norm_sq(a, b)})
    params = {
        "alpha": args.alpha,
        "beta": betas,
        "formula": G0_FORMULA,
        "seed": args.seed,
    }
    return params, {"rows": rows}, rows, 0, 0.0


def _cmd_norm(args):
    trunc = args.trunc if args.trunc is not None else default_trunc()
    alpha0 = args.alpha[0]
    beta0 = args.beta[0] if args.beta else None
    symbol = _parse_symbol(args.symbol, alpha0, beta0)
    series = _expand_symbol(symbol, trunc)
    rows = []
    worst = 0.0
    for a in args.alpha:
        est = bergman_norm_sq(series, a)
        row = {"alpha": a, "value_sq": est.value_sq, "kind": est.kind, "residual": est.residual}
        if args.quadrature:
            oracle = disk_quadrature_norm_sq(series, a)
            row["quadrature_sq"] = oracle.value_sq
        if args.dirichlet:
            row["dirichlet_sq"] = dirichlet_norm_sq(series, a).value_sq
        rows.append(row)
        worst = max(worst, est.residual)
    params = {"symbol": args.symbol, "alpha": args.alpha, "trunc": trunc, "seed": args.seed}
    return params, {"rows": rows}, rows, series.trunc, worst


def _cmd_mult_norm(args):
    n_cols = args.trunc if args.trunc is not None else 512
    n_rows = args.rows if args.rows is not None else 4 * n_cols
    alpha0 = args.alpha[0]
    beta0 = args.beta[0] if args.beta else alpha0 + 4.0
    symbol = _parse_symbol(args.symbol, alpha0, beta0)
    spec = MultiplierSpec(alpha=alpha0, beta=beta0, symbol=symbol)
    est = compression_norm_sq(operator_matrix(spec, n_cols, n_rows))
    rows = [
        {
            "alpha": alpha0,
            "beta": beta0,
            "cols": n_cols + 1,
            "rows": n_rows + 1,
            "value_sq": est.value_sq,
            "norm_lower_bound": math.sqrt(est.value_sq),
            "kind": est.kind,
        }
    ]
    params = {
        "symbol": args.symbol,
        "alpha": alpha0,
        "beta": beta0,
        "trunc": n_cols,
        "rows": n_rows,
        "seed": args.seed,
    }
    return params, {"rows": rows}, rows, est.trunc, est.residual


def _cmd_test_family(args):
    alpha0 = args.alpha[0]
    beta0 = args.beta[0] if args.beta else alpha0 + 4.0
    lambdas = args.lambda_grid if args.lambda_grid else _default_lambda_grid(alpha0)
    symbol = _parse_symbol(args.symbol, alpha0, beta0)
    spec = MultiplierSpec(alpha=alpha0, beta=beta0, symbol=symbol)
    rows = []
    worst_trunc = 0
    worst_res = 0.0
    for lam in lambdas:
        for r in args.r_grid:
            probe = test_family_rayleigh(
                spec, lam, r, family=args.family, trunc=args.trunc
            )
            rows.append(
                {
                    "exponent": probe.exponent,
                    "r": probe.r,
                    "rayleigh_sq": probe.rayleigh_sq,
                }
            )
            worst_trunc = max(worst_trunc, probe.trunc)
            worst_res = max(worst_res, probe.residual)
    params = {
        "symbol": args.symbol,
        "alpha": alpha0,
        "beta": beta0,
        "family": args.family,
        "lambda_grid": lambdas,
        "r_grid": args.r_grid,
        "seed": args.seed,
    }
    return params, {"rows": rows}, rows, worst_trunc, worst_res


def _asymptotic_prediction(alpha, lam, r, family):
    log_c = log_gamma(alpha + 2.0) + log_gamma(2.0 * lam - alpha - 2.0) - 2.0 * log_gamma(lam)
    constant = math.exp(log_c)
    if family == "one_minus_rz_sq":
        constant /= 2.0 ** (alpha + 1.0)
    return constant * (1.0 - r * r) ** -(2.0 * lam - alpha - 2.0)


def _cmd_asymptotics(args):
    alpha0 = args.alpha[0]
    lambdas = args.lambda_grid if args.lambda_grid else _default_lambda_grid(alpha0)
    rows = []
    worst_trunc = 0
    worst_res = 0.0
    for lam in lambdas:
        if not 2.0 * lam > alpha0 + 2.0:
            raise DomainError(
                f"asymptotics need 2*lambda > alpha + 2, got lambda={lam}, alpha={alpha0}"
            )
        for r in args.r_grid:
            if not 0.0 < r < 1.0:
                raise DomainError(f"radius must lie in (0,1), got {r}")
            n = max(int(math.ceil(50.0 / (1.0 - r))), 64, args.trunc or 0)
            if args.family == "one_minus_rz":
                coeffs = binomial_coeffs(lam, n) * np.power(r, np.arange(n + 1.0))
            else:
                base = binomial_coeffs(lam, n // 2)
                coeffs = np.zeros(n + 1)
                coeffs[::2] = base * np.power(r, np.arange(base.shape[0], dtype=float))
            est = bergman_norm_sq(PowerSeries(coeffs.astype(np.complex128)), alpha0)
            predicted = _asymptotic_prediction(alpha0, lam, r, args.family)
            rows.append(
                {
                    "exponent": lam,
                    "r": r,
                    "norm_sq": est.value_sq,
                    "predicted_sq": predicted,
                    "ratio": est.value_sq / predicted,
                }
            )
            worst_trunc = max(worst_trunc, n)
            worst_res = max(worst_res, est.residual)
    params = {
        "alpha": alpha0,
        "family": args.family,
        "lambda_grid": lambdas,
        "r_grid": args.r_grid,
        "seed": args.seed,
    }
    return params, {"rows": rows}, rows, worst_trunc, worst_res


def _cmd_schwarzian(args):
    r_map = _parse_map(args.map)
    pre = pre_schwarzian(r_map)
    s_map = schwarzian_rational(r_map)
    values = {
        "pre_schwarzian": {
            "num": [_complex_obj(c) for c in pre.num.coeffs],
            "den": [_complex_obj(c) for c in pre.den.coeffs],
        },
        "schwarzian": {
            "num": [_complex_obj(c) for c in s_map.num.coeffs],
            "den": [_complex_obj(c) for c in s_map.den.coeffs],
        },
    }
    rows = (
        _poly_rows("pre_schwarzian_num", pre.num)
        + _poly_rows("pre_schwarzian_den", pre.den)
        + _poly_rows("schwarzian_num", s_map.num)
        + _poly_rows("schwarzian_den", s_map.den)
    )
    params = {"map": args.map, "seed": args.seed}
    return params, values, rows, 0, 0.0


def _cmd_critical_points(args):
    r_map = _parse_map(args.map)
    found = critical_points_on_circle(r_map, tol=args.tolerance)
    rows = [
        {"re": z.real, "im": z.imag, "modulus": abs(z)}
        for z in found.points
    ]
    params = {"map": args.map, "tolerance": args.tolerance, "seed": args.seed}
    return params, {"rows": rows}, rows, 0, args.tolerance


def _cmd_laurent(args):
    r_map = _parse_map(args.map)
    target = schwarzian_rational(r_map) if args.schwarzian else r_map
    z0 = parse_complex(args.point)
    leading = laurent_leading(target, z0)
    values = {
        "point": _complex_obj(z0),
        "leading": _complex_obj(leading),
        "of_schwarzian": bool(args.schwarzian),
    }
    rows = [
        {
            "point_re": z0.real,
            "point_im": z0.imag,
            "leading_re": leading.real,
            "leading_im": leading.imag,
        }
    ]
    params = {
        "map": args.map,
        "point": args.point,
        "schwarzian": bool(args.schwarzian),
        "seed": args.seed,
    }
    return params, values, rows, 0, 1e-6


def _cmd_hardy(args):
    if args.alpha_beta:
        alpha, beta = args.alpha_beta
        p = 2.0
        a = -alpha - 1.0
        order = (beta - alpha) / 2.0
        reference = math.exp(
            2.0 * (log_gamma(1.0 + alpha / 2.0) - log_gamma(1.0 + beta / 2.0))
        )
    else:
        p, a, order = args.p, args.a, args.order
        reference = None
    constant = hardy_constant(p, order, a)
    row = {"p": p, "order": order, "a": a, "constant": constant}
    values = {"p": p, "order": order, "a": a, "constant": constant, "formula": HARDY_FORMULA}
    if reference is not None:
        row["gamma_quotient_sq"] = reference
        values["gamma_quotient_sq"] = reference
    if args.demo:
        if a > -1.0:
            def _indicator(t):
                t = np.asarray(t, dtype=float)
                return ((t > 0.0) & (t < 1.0)).astype(float)

            lhs, rhs = hardy_check(_indicator, p, order, a, breakpoints=(1.0,))
            row["demo_lhs"] = lhs
            row["demo_rhs_bound"] = rhs
            values["demo_lhs"] = lhs
            values["demo_rhs_bound"] = rhs
        else:
            values["demo_skipped"] = "demo integral requires a > -1"
    params = {"p": p, "order": order, "a": a, "seed": args.seed}
    return params, values, [row], 0, 0.0


def _cmd_laplace_check(args):
    rows = []
    worst = 0.0
    for a in args.alpha:
        density = power_exp_density(args.power, args.rate)
        dens = density_norm_sq(density, a)
        plane = halfplane_norm_sq(density.transform, a)
        residual = (
            abs(plane.value_sq - dens.value_sq) / dens.value_sq
            if dens.value_sq
            else 0.0
        )
        rows.append(
            {
                "power": args.power,
                "rate": args.rate,
                "alpha": a,
                "density_norm_sq": dens.value_sq,
                "halfplane_norm_sq": plane.value_sq,
                "residual_rel": residual,
            }
        )
        worst = max(worst, residual)
    params = {
        "power": args.power,
        "rate": args.rate,
        "alpha": args.alpha,
        "seed": args.seed,
    }
    return params, {"rows": rows}, rows, 0, worst


def _cmd_spectrum(args):
    r_map = _parse_map(args.map)
    deriv = rational_derivative(r_map)
    ks = list(range(args.k_min, args.k_max + 1))
    fit = spectrum_slope(deriv, args.t, ks)
    rows = [
        {"k": k, "r": r, "integral": v}
        for k, r, v in zip(ks, fit.r_grid, fit.integrals)
    ]
    values = {"t": fit.t, "slope": fit.slope, "stderr": fit.stderr, "rows": rows}
    params = {
        "map": args.map,
        "t": args.t,
        "k_min": args.k_min,
        "k_max": args.k_max,
        "seed": args.seed,
    }
    return params, values, rows, 1 << 20, fit.stderr


def _cmd_volterra(args):
    n_cols = args.trunc if args.trunc is not None else 512
    alpha0 = args.alpha[0]
    beta0 = args.beta[0] if args.beta else alpha0 + 4.0
    symbol = _parse_symbol(args.symbol, alpha0, beta0)
    if args.variant == "j":
        spec = MultiplierSpec(alpha=alpha0, beta=beta0, symbol=symbol)
        est = volterra_j_norm_sq(spec, n_cols=n_cols, force_numeric=args.force_numeric)
    else:
        est = volterra_i_norm_sq(
            symbol, alpha0, beta0, n_cols=n_cols, force_numeric=args.force_numeric
        )
    rows = [
        {
            "variant": args.variant,
            "alpha": alpha0,
            "beta": beta0,
            "value_sq": est.value_sq,
            "kind": est.kind,
        }
    ]
    params = {
        "symbol": args.symbol,
        "variant": args.variant,
        "alpha": alpha0,
        "beta": beta0,
        "trunc": n_cols,
        "seed": args.seed,
    }
    return params, {"rows": rows}, rows, est.trunc, est.residual


def _cmd_claim_probe(args):
    alpha0 = args.alpha[0]
    lambdas = args.lambda_grid if args.lambda_grid else [alpha0 / 2.0 + 1.1]
    rows = []
    for lam in lambdas:
        vals = claim_boundedness_probe(
            lambda z: np.ones_like(z),
            lam,
            args.theta,
            args.kind,
            args.r_grid,
            alpha=alpha0,
        )
        for r, v in zip(args.r_grid, vals):
            rows.append({"kind": args.kind, "exponent": lam, "r": r, "value": v})
    params = {
        "kind": args.kind,
        "theta": args.theta,
        "alpha": alpha0,
        "lambda_grid": lambdas,
        "r_grid": args.r_grid,
        "seed": args.seed,
    }
    return params, {"rows": rows}, rows, 0, 0.0


_HANDLERS = {
    "norm": _cmd_norm,
    "mult-norm": _cmd_mult_norm,
    "koebe-table": _cmd_koebe_table,
    "g0-table": _cmd_g0_table,
    "test-family": _cmd_test_family,
    "asymptotics": _cmd_asymptotics,
    "schwarzian": _cmd_schwarzian,
    "critical-points": _cmd_critical_points,
    "laurent": _cmd_laurent,
    "hardy": _cmd_hardy,
    "laplace-check": _cmd_laplace_check,
    "spectrum": _cmd_spectrum,
    "volterra": _cmd_volterra,
    "claim-probe": _cmd_claim_probe,
}


def _add_common(parser):
    parser.add_argument("--alpha", type=_float_list, default=[0.0], help="weight exponent(s), comma-separated")
    parser.add_argument("--beta", type=_float_list, default=None, help="target weight exponent(s)")
    parser.add_argument("--lambda-grid", dest="lambda_grid", type=_float_list, default=None, help="test exponents (default alpha/2+1+10^-k, k=1..4)")
    parser.add_argument("--r-grid", dest="r_grid", type=_float_list, default=[0.9, 0.99, 0.999], help="radial grid in (0,1)")
    parser.add_argument("--trunc", type=int, default=None, help="series truncation / matrix columns (default 2048 or BERGMAN_TRUNC)")
    parser.add_argument("--tolerance", type=float, default=1e-8, help="tolerance where applicable (circle membership)")
    parser.add_argument("--output", choices=("json", "csv"), default="json")
    parser.add_argument("--seed", type=int, default=42, help="seed echoed into reports (fixed default 42)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bergmult",
        description="Multiplier norms between weighted Bergman spaces: closed forms, "
        "lower-bound machinery, and the surrounding integral checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sym_help = "preset (one, koebe-schwarzian, g0, g1, g2, g3) or poly:/rat:/series: literal"
    map_help = "map preset (identity, koebe-map) or poly:/rat: literal"

    p = sub.add_parser("norm", help="coefficient-formula squared norm of a symbol")
    p.add_argument("--symbol", default="g0", help=sym_help)
    p.add_argument("--quadrature", action="store_true", help="add the disk-quadrature oracle value")
    p.add_argument("--dirichlet", action="store_true", help="add the Dirichlet-type squared norm")
    _add_common(p)

    p = sub.add_parser("mult-norm", help="compression lower bound of the multiplier norm")
    p.add_argument("--symbol", default="g0", help=sym_help)
    p.add_argument("--rows", type=int, default=None, help="matrix row degree (default 4*trunc)")
    _add_common(p)

    p = sub.add_parser("koebe-table", help="closed-form squared norms of the disk-cover Schwarzian")
    _add_common(p)

    p = sub.add_parser("g0-table", help="closed-form squared norms of the even reference symbol")
    _add_common(p)

    p = sub.add_parser("test-family", help="radial test-family Rayleigh quotients")
    p.add_argument("--symbol", default="g0", help=sym_help)
    p.add_argument("--family", choices=("one_minus_rz", "one_minus_rz_sq"), default="one_minus_rz")
    _add_common(p)

    p = sub.add_parser("asymptotics", help="test-function norms against their boundary asymptotics")
    p.add_argument("--family", choices=("one_minus_rz", "one_minus_rz_sq"), default="one_minus_rz")
    _add_common(p)

    p = sub.add_parser("schwarzian", help="pre-Schwarzian and Schwarzian of a rational map")
    p.add_argument("--map", default="koebe-map", help=map_help)
    _add_common(p)

    p = sub.add_parser("critical-points", help="critical points of a rational map on the unit circle")
    p.add_argument("--map", default="koebe-map", help=map_help)
    _add_common(p)

    p = sub.add_parser("laurent", help="second-order Laurent coefficient at a pole")
    p.add_argument("--map", default="koebe-map", help=map_help)
    p.add_argument("--point", default="-1", help="expansion point as a+bi")
    p.add_argument("--schwarzian", action="store_true", help="expand the Schwarzian of the map instead of the map")
    _add_common(p)

    p = sub.add_parser("hardy", help="sharp weighted Hardy constant (optionally with a demo inequality)")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--order", type=float, default=1.0)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--alpha-beta", dest="alpha_beta", type=_float_list, default=None,
                   help="alpha,beta pair: use the substitution p=2, a=-alpha-1, order=(beta-alpha)/2")
    p.add_argument("--demo", action="store_true", help="also evaluate both sides for the unit-interval indicator")
    _add_common(p)

    p = sub.add_parser("laplace-check", help="half-plane norm vs weighted density norm (isometry residual)")
    p.add_argument("--power", type=float, default=1.0, help="density is t^power e^(-rate t)")
    p.add_argument("--rate", type=float, default=1.0)
    _add_common(p)

    p = sub.add_parser("spectrum", help="integral-means growth exponent of a map derivative")
    p.add_argument("--map", default="koebe-map", help=map_help)
    p.add_argument("--t", type=float, default=-2.0, help="integrand power")
    p.add_argument("--k-min", dest="k_min", type=int, default=6)
    p.add_argument("--k-max", dest="k_max", type=int, default=14)
    _add_common(p)

    p = sub.add_parser("volterra", help="Volterra-type operator norm via the multiplier reduction")
    p.add_argument("--symbol", default="g2", help=sym_help)
    p.add_argument("--variant", choices=("j", "i"), default="j")
    p.add_argument("--force-numeric", dest="force_numeric", action="store_true",
                   help="skip closed-form detection")
    _add_common(p)

    p = sub.add_parser("claim-probe", help="uniform-boundedness integrals T1-T4 along a radius grid")
    p.add_argument("--kind", choices=("T1", "T2", "T3", "T4"), default="T2")
    p.add_argument("--theta", type=float, default=math.pi, help="rotation angle for T3/T4")
    _add_common(p)

    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    start = time.perf_counter()
    params, values, rows, trunc, residual = handler(args)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    meta = {"trunc": int(trunc), "residual": float(residual), "runtime_ms": runtime_ms}
    if args.output == "csv":
        return _to_csv(rows, args.command, meta)
    report = {"command": args.command, "params": params, "values": values, "meta": meta}
    return _to_json(report)


def main(argv=None):
    try:
        text = run(argv)
    except (DomainError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
