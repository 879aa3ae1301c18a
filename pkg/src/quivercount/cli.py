"""Command-line surface.

Subcommands: count, sidim, fiber-class, verify.  Instances are plain
text files (quiver lines, dimension vectors, optional mu lines); every
report ends with a flat machine-readable `key = value` block after a
`---` separator so golden tests and other tools can parse output without
caring about the human-readable part.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

from . import __version__
from .counting import (
    NegativePairingError,
    NonzeroPairingError,
    count_subreps_detailed,
    fiber_class,
    random_instance,
    random_zero_triple,
    si_dimension_detailed,
    triple_flag_instance,
    verify_counts,
    weight_of,
)
from .covariants import build_hat, covariant_count, covariant_multiplicity
from .ffield import GF
from .lr import LREngine
from .oracles import BudgetExceededError, sampled_subrep_count, si_rank_oracle, verify_determinant_basis
from .partitions import Rectangle, format_partition, parse_partition, partitions_in_rectangle, size
from .quiver import Quiver, euler_form

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class InstanceParseError(ValueError):
    pass


@dataclass(frozen=True)
class InstanceSpec:
    quiver: Quiver
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    mu: tuple[tuple[int, ...], ...] | None = None


def parse_instance(text: str) -> InstanceSpec:
    """Parse the instance grammar: `vertices N`, `arrow T H`, `alpha ...`,
    `beta ...`, optional `mu i:(p1,p2,...)` lines, `#` comments."""
    nvertices = None
    arrows: list[tuple[int, int]] = []
    alpha = beta = None
    mu_lines: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split(None, 1)
        key, rest = fields[0], fields[1] if len(fields) > 1 else ""
        try:
            if key == "vertices":
                nvertices = int(rest)
            elif key == "arrow":
                t, h = rest.split()
                arrows.append((int(t), int(h)))
            elif key == "alpha":
                alpha = tuple(int(x) for x in rest.split())
            elif key == "beta":
                beta = tuple(int(x) for x in rest.split())
            elif key == "mu":
                idx, part = rest.split(":", 1)
                i = int(idx)
                if i in mu_lines:
                    raise ValueError(f"duplicate mu line for vertex {i}")
                mu_lines[i] = parse_partition(part)
            else:
                raise ValueError(f"unknown directive {key!r}")
        except ValueError as e:
            raise InstanceParseError(f"line {lineno}: {e}") from None
    if nvertices is None:
        raise InstanceParseError("missing `vertices` line")
    if alpha is None or beta is None:
        raise InstanceParseError("missing `alpha` or `beta` line")
    try:
        Q = Quiver(nvertices, tuple(arrows))
    except ValueError as e:
        raise InstanceParseError(str(e)) from None
    if len(alpha) != nvertices or len(beta) != nvertices:
        raise InstanceParseError(
            f"dimension vectors must have {nvertices} entries"
        )
    mu = None
    if mu_lines:
        bad = [i for i in mu_lines if not 0 <= i < nvertices]
        if bad:
            raise InstanceParseError(f"mu vertex index out of range: {bad[0]}")
        mu = tuple(mu_lines.get(i, ()) for i in range(nvertices))
    return InstanceSpec(Q, alpha, beta, mu)


def render_instance(spec: InstanceSpec) -> str:
    """Canonical text form; parse(render(s)) == s and render is idempotent
    through a parse."""
    lines = [f"vertices {spec.quiver.nvertices}"]
    for t, h in spec.quiver.arrows:
        lines.append(f"arrow {t} {h}")
    lines.append("alpha " + " ".join(str(x) for x in spec.alpha))
    lines.append("beta " + " ".join(str(x) for x in spec.beta))
    if spec.mu is not None:
        for i, p in enumerate(spec.mu):
            lines.append(f"mu {i}:{format_partition(p)}")
    return "\n".join(lines) + "\n"


def _brief(Q: Quiver, beta, alpha) -> str:
    arrows = ",".join(f"{t}->{h}" for t, h in Q.arrows) or "-"
    return f"[{Q.nvertices}v {arrows}] beta={beta} alpha={alpha}"


def _load_spec(path: str) -> InstanceSpec:
    if path == "-":
        return parse_instance(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _machine_block(out, pairs) -> None:
    print("---", file=out)
    for k, v in pairs:
        print(f"{k} = {v}", file=out)


def _theta(m: int) -> Quiver:
    return Quiver(2, tuple((0, 1) for _ in range(m)))


# -- subcommands ---------------------------------------------------------------


def cmd_count(args, out) -> int:
    t0 = time.monotonic()
    spec = _load_spec(args.instance)
    gamma = tuple(a - b for a, b in zip(spec.alpha, spec.beta))
    pairing = euler_form(spec.quiver, spec.beta, gamma)
    if spec.mu is None:
        n, labelings, breakdown = count_subreps_detailed(
            spec.quiver, spec.beta, spec.alpha, breakdown=args.breakdown
        )
    else:
        # mu lines select one piece of the fiber class; count it on the
        # arm-enlarged quiver so the same labeled-sum engine applies
        hat = build_hat(spec.quiver, spec.beta, spec.alpha, spec.mu)
        n, labelings, breakdown = count_subreps_detailed(
            hat.quiver, hat.beta, hat.alpha, breakdown=args.breakdown
        )
    print(f"N = {n}", file=out)
    if args.breakdown:
        for labeling, contribution in breakdown:
            text = " ".join(format_partition(p) for p in labeling)
            print(f"  {text}: {contribution}", file=out)
    _machine_block(
        out,
        [
            ("command", "count"),
            ("n", n),
            ("euler", pairing),
            ("labelings", labelings),
            ("seed", args.seed),
            ("version", f"quivercount {__version__}"),
            ("elapsed_ms", int(1000 * (time.monotonic() - t0))),
        ],
    )
    return EXIT_OK


def cmd_sidim(args, out) -> int:
    t0 = time.monotonic()
    spec = _load_spec(args.instance)
    gamma = tuple(a - b for a, b in zip(spec.alpha, spec.beta))
    pairing = euler_form(spec.quiver, spec.beta, gamma)
    if spec.mu is None:
        m, labelings, _ = si_dimension_detailed(spec.quiver, spec.beta, spec.alpha)
    else:
        m = covariant_multiplicity(spec.quiver, spec.beta, spec.alpha, spec.mu)
        labelings = None
    sigma = weight_of(spec.quiver, spec.beta)
    sigma_text = "(" + ",".join(str(x) for x in sigma) + ")"
    print(f"M = {m}, sigma = {sigma_text}", file=out)
    pairs = [
        ("command", "sidim"),
        ("m", m),
        ("sigma", sigma_text),
        ("euler", pairing),
    ]
    if labelings is not None:
        pairs.append(("labelings", labelings))
    pairs += [
        ("seed", args.seed),
        ("version", f"quivercount {__version__}"),
        ("elapsed_ms", int(1000 * (time.monotonic() - t0))),
    ]
    _machine_block(out, pairs)
    return EXIT_OK


def cmd_fiber_class(args, out) -> int:
    t0 = time.monotonic()
    spec = _load_spec(args.instance)
    fc = fiber_class(spec.quiver, spec.beta, spec.alpha)
    gamma = tuple(a - b for a, b in zip(spec.alpha, spec.beta))
    pairing = euler_form(spec.quiver, spec.beta, gamma)
    for mu, coeff in fc.sorted_items():
        text = ";".join(f"{i}:{format_partition(p)}" for i, p in enumerate(mu))
        print(f"{text} -> {coeff}", file=out)
    _machine_block(
        out,
        [
            ("command", "fiber-class"),
            ("euler", pairing),
            ("terms", len(fc.coeffs)),
            ("seed", args.seed),
            ("version", f"quivercount {__version__}"),
            ("elapsed_ms", int(1000 * (time.monotonic() - t0))),
        ],
    )
    return EXIT_OK


# -- verify suites -------------------------------------------------------------


def _suite_kronecker(args, engine):
    rows = []
    for r in (1, 2, 3, 4):
        Q = _theta(2 * r)
        beta, alpha = (1, r), (r + 1, r + 1)
        rep = verify_counts(Q, beta, alpha, engine)
        expected = comb(2 * r, r)
        ok = rep.n_value == rep.m_value == expected
        rows.append(
            (
                f"theta({2*r}) {_brief(Q, beta, alpha)}",
                rep.n_value,
                rep.m_value,
                f"binom={expected}",
                ok,
                InstanceSpec(Q, alpha, beta),
            )
        )
    return rows


def _suite_random(args, engine):
    import random as _random

    rng = _random.Random(args.seed)
    specs = []
    for i in range(args.count):
        if i % 3 == 2:
            # every third instance from the dense profile: parallel arrows
            # between few vertices, where the labeled sums get interesting
            Q, beta, alpha = random_instance(
                rng, max_verts=3, max_arrows=5, max_dim=args.max_dim, min_arrows=2
            )
        else:
            Q, beta, alpha = random_instance(
                rng,
                max_verts=args.max_verts,
                max_arrows=args.max_arrows,
                max_dim=args.max_dim,
            )
        specs.append(InstanceSpec(Q, alpha, beta))

    def check(spec):
        rep = verify_counts(spec.quiver, spec.beta, spec.alpha, engine)
        return (
            _brief(spec.quiver, spec.beta, spec.alpha),
            rep.n_value,
            rep.m_value,
            "",
            rep.passed,
            spec,
        )

    return _parallel_map(check, specs, args.jobs)


def _suite_tripleflag(args, engine):
    n, r = args.flag_n, args.flag_r
    rect = Rectangle(r, n - r)
    rows = []
    specs = []
    for lam in partitions_in_rectangle(rect):
        for mu in partitions_in_rectangle(rect):
            for nu in partitions_in_rectangle(rect):
                if size(lam) + size(mu) + size(nu) != r * (n - r):
                    continue
                specs.append((lam, mu, nu))

    def check(parts):
        lam, mu, nu = parts
        Q, beta, alpha, expected = triple_flag_instance(lam, mu, nu, r, n, engine)
        got = verify_counts(Q, beta, alpha, engine)
        ok = got.n_value == expected and got.passed
        label = (
            f"{format_partition(lam)},{format_partition(mu)},{format_partition(nu)}"
        )
        return (label, got.n_value, got.m_value, f"lr={expected}", ok, InstanceSpec(Q, alpha, beta))

    return _parallel_map(check, specs, args.jobs)


def _suite_covariants(args, engine):
    import random as _random

    rng = _random.Random(args.seed)
    jobs = []
    # the worked two-vertex example first
    A2 = Quiver(2, ((0, 1),))
    jobs.append((A2, (1, 1), (2, 2)))
    while len(jobs) < args.count:
        dense = len(jobs) % 3 == 2
        Q, beta, alpha = random_instance(
            rng,
            max_verts=3,
            max_arrows=3,
            max_dim=3,
            min_arrows=2 if dense else 0,
            require_zero_pairing=False,
        )
        gamma = tuple(a - b for a, b in zip(alpha, beta))
        pairing = euler_form(Q, beta, gamma)
        if not 0 <= pairing <= 3:
            continue
        jobs.append((Q, beta, alpha))

    def check(job):
        Q, beta, alpha = job
        fc = fiber_class(Q, beta, alpha, engine)
        ok = True
        detail = []
        for mu, coeff in fc.sorted_items():
            cc = covariant_count(Q, beta, alpha, mu, engine)
            cm = covariant_multiplicity(Q, beta, alpha, mu, engine)
            if not (cc == cm == coeff):
                ok = False
            detail.append(f"{coeff}/{cc}/{cm}")
        return (
            _brief(Q, beta, alpha),
            len(fc.coeffs),
            sum(fc.coeffs.values()),
            "fiber/count/mult " + (";".join(detail) if detail else "empty"),
            ok,
            InstanceSpec(Q, alpha, beta),
        )

    return _parallel_map(check, jobs, args.jobs)


def _suite_multiplicativity(args, engine):
    import random as _random

    rng = _random.Random(args.seed)
    triples = []
    pinned = [
        (_theta(2), (1, 1), (1, 1), (1, 1)),
        (_theta(2), (1, 1), (2, 2), (1, 1)),
        (_theta(2), (2, 2), (1, 1), (1, 1)),
    ]
    triples.extend(pinned)
    while len(triples) < args.count:
        triples.append(random_zero_triple(rng, max_verts=3, max_arrows=4, max_dim=3))

    def check(triple):
        Q, b, c, d = triple
        from .counting import count_subreps

        a1 = tuple(x + y for x, y in zip(b, c))
        a2 = tuple(x + y for x, y in zip(a1, d))
        cd = tuple(x + y for x, y in zip(c, d))
        lhs = count_subreps(Q, b, a1, engine) * count_subreps(Q, a1, a2, engine)
        rhs = count_subreps(Q, b, a2, engine) * count_subreps(Q, c, cd, engine)
        return (
            f"{_brief(Q, b, a2)} via {c}+{d}",
            lhs,
            rhs,
            "",
            lhs == rhs,
            InstanceSpec(Q, a2, b),
        )

    return _parallel_map(check, triples, args.jobs)


def _suite_oracles(args, engine):
    # pinned nontrivial instances that fit the default point budget
    instances = [
        (_theta(2), (1, 1), (2, 2)),
        (Quiver(3, ((0, 1), (0, 1), (1, 2))), (1, 1, 2), (2, 2, 2)),
        (Quiver(3, ((0, 2), (0, 2), (1, 2))), (1, 0, 1), (2, 2, 2)),
    ]
    import random as _random

    rng = _random.Random(args.seed)
    for _ in range(args.count):
        instances.append(random_instance(rng))

    def check(inst):
        Q, beta, alpha = inst
        from .counting import count_subreps, si_dimension
        from .oracles import _raw_point_count

        n = count_subreps(Q, beta, alpha, engine)
        m = si_dimension(Q, beta, alpha, engine)
        points = _raw_point_count(Q, alpha, beta, args.q**args.ext)
        if points > args.oracle_budget:
            return (
                _brief(Q, beta, alpha),
                n,
                m,
                f"skipped ({points} points)",
                True,
                InstanceSpec(Q, alpha, beta),
            )
        sampled = sampled_subrep_count(
            Q, beta, alpha, args.q, max_ext_degree=args.ext, trials=args.trials, seed=args.seed
        )
        gamma = tuple(a - b for a, b in zip(alpha, beta))
        rank = si_rank_oracle(Q, beta, gamma, field=GF(args.q), seed=args.seed)
        ok = sampled.modal == n and rank == m
        return (
            _brief(Q, beta, alpha),
            n,
            m,
            f"modal={sampled.modal} rank={rank}",
            ok,
            InstanceSpec(Q, alpha, beta),
        )

    return _parallel_map(check, instances, args.jobs)


def _suite_basis(args, engine):
    rows = []
    for label, Q, beta, alpha in (
        ("theta(2)", _theta(2), (1, 1), (2, 2)),
        ("theta(4)", _theta(4), (1, 2), (3, 3)),
    ):
        rep = verify_determinant_basis(Q, beta, alpha, GF(args.q), seed=args.seed)
        ok = rep.passed and rep.k == rep.m_expected
        note = f"k={rep.k} ext={rep.extension_degree}" + (
            f" ({rep.reason})" if rep.reason else ""
        )
        rows.append((label, rep.n_expected, rep.m_expected, note, ok, InstanceSpec(Q, alpha, beta)))
    return rows


def _parallel_map(fn, items, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def cmd_verify(args, out) -> int:
    t0 = time.monotonic()
    engine = LREngine()
    suites = []
    if args.instance:
        spec = _load_spec(args.instance)
        if args.oracles:
            ns = argparse.Namespace(**vars(args))
            ns.count = 0

            def single(args=ns, spec=spec):
                return _suite_oracles_single(spec, args, engine)

            suites.append(("instance-oracles", single))
        elif spec.mu is not None:
            def single(spec=spec):
                fc = fiber_class(spec.quiver, spec.beta, spec.alpha, engine)
                coeff = fc.coefficient(spec.mu)
                cc = covariant_count(spec.quiver, spec.beta, spec.alpha, spec.mu, engine)
                cm = covariant_multiplicity(spec.quiver, spec.beta, spec.alpha, spec.mu, engine)
                return [
                    (
                        _brief(spec.quiver, spec.beta, spec.alpha),
                        cc,
                        cm,
                        f"fiber={coeff}",
                        cc == cm == coeff,
                        spec,
                    )
                ]

            suites.append(("instance-covariant", single))
        else:
            def single(spec=spec):
                rep = verify_counts(spec.quiver, spec.beta, spec.alpha, engine)
                return [
                    (
                        _brief(spec.quiver, spec.beta, spec.alpha),
                        rep.n_value,
                        rep.m_value,
                        "",
                        rep.passed,
                        spec,
                    )
                ]

            suites.append(("instance", single))
    if args.kronecker:
        suites.append(("kronecker", lambda: _suite_kronecker(args, engine)))
    if args.random is not None:
        args.count = args.random
        suites.append(("random", lambda: _suite_random(args, engine)))
    if args.tripleflag:
        suites.append(("tripleflag", lambda: _suite_tripleflag(args, engine)))
    if args.covariants:
        suites.append(("covariants", lambda: _suite_covariants(args, engine)))
    if args.multiplicativity:
        suites.append(("multiplicativity", lambda: _suite_multiplicativity(args, engine)))
    if args.oracles and not args.instance:
        suites.append(("oracles", lambda: _suite_oracles(args, engine)))
    if args.basis:
        suites.append(("basis", lambda: _suite_basis(args, engine)))
    if not suites:
        print("no suite selected (use --kronecker, --random N, --tripleflag, "
              "--covariants, --multiplicativity, --oracles, --basis, or an instance file)",
              file=sys.stderr)
        return EXIT_USAGE

    failures = 0
    total = 0
    for name, suite in suites:
        rows = suite()
        print(f"suite {name}:", file=out)
        for label, n, m, note, ok, spec in rows:
            total += 1
            verdict = "ok" if ok else "FAIL"
            note_text = f"  {note}" if note else ""
            print(f"  {verdict:4} {label}  N={n} M={m}{note_text}", file=out)
            if not ok:
                failures += 1
                print("    offending instance:", file=out)
                for line in render_instance(spec).splitlines():
                    print(f"      {line}", file=out)
    _machine_block(
        out,
        [
            ("command", "verify"),
            ("suites", ",".join(name for name, _ in suites)),
            ("instances", total),
            ("failures", failures),
            ("seed", args.seed),
            ("version", f"quivercount {__version__}"),
            ("elapsed_ms", int(1000 * (time.monotonic() - t0))),
        ],
    )
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _suite_oracles_single(spec: InstanceSpec, args, engine):
    from .counting import count_subreps, si_dimension

    Q, beta, alpha = spec.quiver, spec.beta, spec.alpha
    n = count_subreps(Q, beta, alpha, engine)
    m = si_dimension(Q, beta, alpha, engine)
    sampled = sampled_subrep_count(
        Q,
        beta,
        alpha,
        args.q,
        max_ext_degree=args.ext,
        trials=args.trials,
        seed=args.seed,
        budget=args.oracle_budget,
    )
    gamma = tuple(a - b for a, b in zip(alpha, beta))
    rank = si_rank_oracle(Q, beta, gamma, field=GF(args.q), seed=args.seed)
    ok = sampled.modal == n and rank == m
    return [
        (
            _brief(Q, beta, alpha),
            n,
            m,
            f"modal={sampled.modal} tally={sampled.tally} rank={rank}",
            ok,
            spec,
        )
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quivercount",
        description="Count subrepresentations of general quiver representations "
        "and dimensions of semi-invariant weight spaces; verify that the two agree.",
    )
    parser.add_argument("--version", action="version", version=f"quivercount {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_count = sub.add_parser("count", help="subrepresentation count N of an instance file")
    p_count.add_argument("instance", help="instance file path, or - for stdin")
    p_count.add_argument("--breakdown", action="store_true", help="list nonzero labeling contributions")
    p_count.add_argument("--seed", type=int, default=0)
    p_count.set_defaults(fn=cmd_count)

    p_sidim = sub.add_parser("sidim", help="semi-invariant weight space dimension M")
    p_sidim.add_argument("instance")
    p_sidim.add_argument("--seed", type=int, default=0)
    p_sidim.set_defaults(fn=cmd_sidim)

    p_fc = sub.add_parser("fiber-class", help="decomposition of the subrepresentation locus class")
    p_fc.add_argument("instance")
    p_fc.add_argument("--seed", type=int, default=0)
    p_fc.set_defaults(fn=cmd_fiber_class)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("instance", nargs="?", help="optional single instance file")
    p_verify.add_argument("--kronecker", action="store_true", help="two-vertex m-arrow family, binomial counts")
    p_verify.add_argument("--random", type=int, metavar="N", help="N = M on N random instances")
    p_verify.add_argument("--tripleflag", action="store_true", help="exhaustive three-flag suite")
    p_verify.add_argument("--n", dest="flag_n", type=int, default=4, help="flag suite ambient dimension")
    p_verify.add_argument("--r", dest="flag_r", type=int, default=2, help="flag suite subspace dimension")
    p_verify.add_argument("--covariants", action="store_true", help="fiber-class coefficient agreement")
    p_verify.add_argument("--multiplicativity", action="store_true", help="chain count identity")
    p_verify.add_argument("--oracles", action="store_true", help="finite-field and rank oracles")
    p_verify.add_argument("--basis", action="store_true", help="determinant dual-basis check")
    p_verify.add_argument("--count", type=int, default=30, help="suite size where applicable")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--q", type=int, default=13, help="oracle base field size")
    p_verify.add_argument("--ext", type=int, default=2, help="oracle extension degree")
    p_verify.add_argument("--trials", type=int, default=11, help="oracle trials per instance")
    p_verify.add_argument("--oracle-budget", type=int, default=200000,
                          help="skip oracle sampling above this point count")
    p_verify.add_argument("--max-verts", type=int, default=4)
    p_verify.add_argument("--max-arrows", type=int, default=4)
    p_verify.add_argument("--max-dim", type=int, default=3)
    p_verify.add_argument("--jobs", type=int, default=1, help="worker threads for suites")
    p_verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help; pass through
        return int(e.code or 0)
    try:
        return args.fn(args, sys.stdout)
    except InstanceParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NonzeroPairingError, NegativePairingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
