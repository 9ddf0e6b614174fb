"""Command line entry point: analyze | multiplicity | sections | verify.

Exit codes: 0 success, 1 a verification property failed, 2 invalid
parameters, 3 the parameter condition needed by the command fails.
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import category_o as co
from . import cherednik as ch
from . import microlocal as ml
from . import reduction as rd
from . import sections as sc
from . import toric as tr
from .hpoly import HPoly
from .sampling import random_symbol
from .serialize import dumps
from .weyl import WeylElement, normal_order, star_multiply


class ConfigError(ValueError):
    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}


def _fractions(text):
    return tuple(Fraction(t.strip()) for t in text.split(",") if t.strip())


def _ints(text):
    return tuple(int(t.strip()) for t in text.split(",") if t.strip())


def default_theta(l):
    return tuple([-1] * (l - 1) + [l - 1])


def default_c(l):
    tail = [Fraction(1, k + 2) for k in range(1, l)]
    return tuple([-sum(tail, Fraction(0))] + tail)


class JobConfig:
    def __init__(self, args):
        try:
            theta = _ints(args.theta) if args.theta else None
            c = _fractions(args.c) if args.c else None
            kappa = _fractions(args.kappa) if args.kappa else None
        except ValueError as exc:
            raise ConfigError(f"cannot parse parameters: {exc}")
        if c is not None and kappa is not None:
            raise ConfigError("give either --c or --kappa, not both")
        l = args.l or len(theta or c or kappa or ()) or 2
        self.theta = theta or default_theta(l)
        if kappa is not None:
            if len(kappa) != l:
                raise ConfigError("kappa has the wrong length")
            if kappa[0] != 0:
                raise ConfigError("kappa_0 must be 0")
            self.kappa = kappa
            self.c = ch.kappa_to_c(kappa)
        else:
            self.c = c if c is not None else default_c(l)
            self.kappa = None
        if len(self.theta) != l or len(self.c) != l:
            raise ConfigError("theta and c must both have length l")
        if sum(self.theta) != 0:
            raise ConfigError("theta must sum to 0")
        if sum(self.c) != 0:
            raise ConfigError("c must sum to 0")
        bad = tr.validate_theta(self.theta)
        if bad:
            raise ConfigError("theta has vanishing arc sums", {"vanishing_arcs": bad})
        self.l = l
        self.eta = tr.ordering_eta(self.theta)
        self.ct = tr.c_tilde(self.c, self.eta)
        self.cutoff = args.cutoff


def cmd_analyze(cfg: JobConfig):
    l = cfg.l
    return {
        "l": l,
        "theta": cfg.theta,
        "eta": cfg.eta,
        "c": cfg.c,
        "c_tilde": cfg.ct,
        "epsilon": {i: co.epsilon_index(i, cfg.ct) for i in range(1, l + 1)},
        "thm1_condition": co.thm1_condition(cfg.c, cfg.theta),
        "morita_condition": co.morita_condition(cfg.c),
        "fixed_points": {i: dict(zip(("a", "b"), tr.fixed_point(i, cfg.eta))) for i in range(1, l + 1)},
        "charts": tr.ToricData(cfg.theta, cfg.c).chart_divisors(),
    }


def cmd_multiplicity(cfg: JobConfig, i: int):
    formula = co.multiplicity_formula(i, cfg.ct, cfg.c, cfg.theta)
    brute = co.multiplicity_bruteforce(i, cfg.c, cfg.eta, cfg.cutoff)
    return {
        "i": i,
        "formula": list(formula),
        "bruteforce": brute,
        "agree": sorted(brute) == list(formula) and all(v == 1 for v in brute.values()),
    }


def _build(kind, i, cfg):
    if kind == "delta":
        return ml.build_M_delta(i, cfg.c, cfg.eta, cfg.theta)
    if kind == "nabla":
        return ml.build_M_nabla(i, cfg.c, cfg.eta, cfg.theta)
    if kind == "L":
        return ml.build_L(i, cfg.c, cfg.eta)
    raise ConfigError(f"unknown kind {kind!r}")


def cmd_sections(cfg: JobConfig, i: int, kind: str):
    spec = _build(kind, i, cfg)
    cert = ml.wellformed_check(spec)
    cutoff = cfg.cutoff if cfg.cutoff is not None else sc.default_cutoff(spec)
    basis = sc.global_sections_basis(spec, cutoff)
    dims = {}
    for fam in basis:
        dims[fam.eigenvalue] = dims.get(fam.eigenvalue, 0) + 1
    out = {
        "module": spec,
        "gluing": cert,
        "support": ml.support(spec),
        "cutoff": cutoff,
        "graded_dimensions": dims,
        "basis": basis,
    }
    if kind == "L":
        ok, reasons = ml.irreducibility_certificate(spec)
        out["irreducible"] = {"ok": ok, "charts": reasons}
    if kind == "delta":
        app = sc.explicit_delta_spec(i, cfg.c, cfg.eta)
        table = []
        for j in range(i, cfg.l + 1):
            try:
                bound = sc.v_range(app, j)
            except sc.OutOfRange:
                continue
            top = min(bound if bound is not None else cutoff, cutoff)
            for m in range(top):
                fam = sc.global_section_v(app, j, m)
                table.append({"j": j, "m": m,
                              "charts": [{"chart": k, "exponent": e, "coeff": s}
                                         for k, (e, s) in sorted(fam.items())]})
        out["explicit_sections"] = table
    return out


# ---------------------------------------------------------------- verify

def _check_star(cfg, rng):
    for _ in range(20):
        rank = rng.randint(1, 3)
        f, g = random_symbol(rng, rank, 4), random_symbol(rng, rank, 4)
        if normal_order(f) * normal_order(g) != star_multiply(f, g):
            return False
    return True


def _check_assoc(cfg, rng):
    for _ in range(20):
        u, v, w = (normal_order(random_symbol(rng, 2, 3)) for _ in range(3))
        if (u * v) * w != u * (v * w):
            return False
    return True


def _check_gwa(cfg, rng):
    pab, pba = rd.gwa_presentation(cfg.c)
    s = [co.s_value(cfg.c, k) for k in range(1, cfg.l + 1)]
    return pab == HPoly.from_roots(s) and pba == pab.shift(1)


def _check_transition(cfg, rng):
    hbar = WeylElement.hbar(1, mask=("x",))
    for j in range(1, cfg.l):
        F, G = rd.quantized_transition(j, cfg.c, cfg.eta)
        if F * G - G * F != -hbar and G * F - F * G != hbar:
            return False
        x = WeylElement.x(1, 1, mask=("x",))
        xi = WeylElement.y(1, 1, mask=("x",))
        if F * G != x * xi - hbar * cfg.ct[j - 1]:
            return False
    return True


def _check_intertwining(cfg, rng):
    kappa = cfg.kappa or ch.c_to_kappa(cfg.c)
    c = ch.kappa_to_c(kappa)
    _, pba = rd.gwa_presentation(c)
    l = cfg.l
    for i in range(1, l + 1):
        mu0 = co.s_value(c, i)
        m0 = ch.lowest_spherical_degree(l, i)
        for m in range(0, 12):
            w = ch.GradedPolyVector.basis(l, i, m0 + l * m)
            if ch.gwa_action_on_cherednik("h", w, kappa) != w.scale(mu0 + m):
                return False
            want = ch.GradedPolyVector.basis(l, i, m0 + l * (m - 1), pba(mu0 + m - 1)) if m else \
                ch.GradedPolyVector.make(l, i, {})
            if ch.gwa_action_on_cherednik("b", w, kappa) != want:
                return False
    return True


def _check_eigen(cfg, rng):
    alg = co.GWA(cfg.c)
    shift = co.h_prime_shift(cfg.c, cfg.eta)
    for i in range(1, cfg.l + 1):
        d = co.delta_module(i, cfg.c, cfg.eta, alg)
        for m in range(10):
            if d.eigenvalue(m) - shift != m + co.partial_sum(cfg.ct, 1, i):
                return False
    return True


def _check_multiplicity(cfg, rng):
    if not co.thm1_condition(cfg.c, cfg.theta):
        return True
    for i in range(1, cfg.l + 1):
        if sorted(co.multiplicity_bruteforce(i, cfg.c, cfg.eta)) != list(co.multiplicity_formula(i, cfg.ct)):
            return False
    return True


def _check_gluing(cfg, rng):
    thm1 = co.thm1_condition(cfg.c, cfg.theta)
    for i in range(1, cfg.l + 1):
        builders = [ml.build_L] + ([ml.build_M_delta, ml.build_M_nabla] if thm1 else [])
        for b in builders:
            try:
                ml.wellformed_check(b(i, cfg.c, cfg.eta))
            except ml.GluingFailure:
                return False
    return True


def _check_sections(cfg, rng):
    if not co.thm1_condition(cfg.c, cfg.theta):
        return True
    cutoff = 6
    for i in range(1, cfg.l + 1):
        spec = ml.build_M_delta(i, cfg.c, cfg.eta)
        dims = sc.graded_dimensions(spec, cutoff)
        base = sc.base_eigenvalue(spec)
        if dims != {base + n: 1 for n in range(cutoff + 1)}:
            return False
        L = co.irreducible_quotient(co.delta_module(i, cfg.c, cfg.eta))
        if L.dim is not None and L.dim <= cutoff:
            if len(sc.global_sections_basis(ml.build_L(i, cfg.c, cfg.eta), cutoff)) != L.dim:
                return False
    return True


def _check_shift(cfg, rng):
    for _ in range(5):
        lam = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
        if lam == -1:
            continue
        if not all(ml.check_shift(lam, 1).values()):
            return False
    try:
        ml.shift_words(-1, 1)
    except ml.ForbiddenShift:
        return True
    return False


PROPERTIES = [
    ("weyl.star_product", _check_star),
    ("weyl.associativity", _check_assoc),
    ("reduction.gwa_presentation", _check_gwa),
    ("reduction.transition", _check_transition),
    ("cherednik.intertwining", _check_intertwining),
    ("category_o.eigenvalues", _check_eigen),
    ("category_o.multiplicity", _check_multiplicity),
    ("microlocal.gluing", _check_gluing),
    ("sections.characters", _check_sections),
    ("microlocal.shift", _check_shift),
]


def cmd_verify(cfg: JobConfig, fault=None):
    rng = random.Random(0)
    results = {}
    first_failure = None
    for name, check in PROPERTIES:
        ok = bool(check(cfg, rng))
        if fault == name:
            ok = False
        results[name] = ok
        if not ok and first_failure is None:
            first_failure = name
    return {"passed": first_failure is None, "first_failure": first_failure, "properties": results}


# ---------------------------------------------------------------- main

def build_parser():
    p = argparse.ArgumentParser(prog="cherednik-zl", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=["analyze", "multiplicity", "sections", "verify"])
    p.add_argument("--l", type=int)
    p.add_argument("--theta", help="comma separated integers theta_0,...,theta_{l-1}")
    p.add_argument("--c", help="comma separated rationals c_0,...,c_{l-1}")
    p.add_argument("--kappa", help="comma separated rationals kappa_0=0,...,kappa_{l-1}")
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--kind", choices=["delta", "nabla", "L"], default="delta")
    p.add_argument("--cutoff", type=int)
    p.add_argument("--out")
    p.add_argument("--inject-fault", dest="fault", help=argparse.SUPPRESS)
    return p


def _emit(payload, out):
    text = dumps(payload)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = JobConfig(args)
        if args.command != "verify" and args.command != "analyze" and not 1 <= args.i <= cfg.l:
            raise ConfigError(f"--i must lie in 1..{cfg.l}")
    except (ConfigError, ValueError) as exc:
        details = getattr(exc, "details", {})
        _emit({"error": "invalid parameters", "message": str(exc), **details}, args.out)
        return 2
    try:
        if args.command == "analyze":
            _emit(cmd_analyze(cfg), args.out)
        elif args.command == "multiplicity":
            _emit(cmd_multiplicity(cfg, args.i), args.out)
        elif args.command == "sections":
            _emit(cmd_sections(cfg, args.i, args.kind), args.out)
        else:
            report = cmd_verify(cfg, args.fault)
            _emit(report, args.out)
            if not report["passed"]:
                sys.stderr.write(f"property failed: {report['first_failure']}\n")
                return 1
    except co.ConditionViolated as exc:
        _emit({"error": "condition violated", "message": str(exc)}, args.out)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
