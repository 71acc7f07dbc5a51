"""Command-line entry point.

Commands
--------
validate   check a channel/scheme document, exit 0 only if well formed
region     evaluate one region kind for a fixed scheme, export the polygon
corners    export the named corner points of the secure region
frontier   search coding schemes and export the hull polygon
simulate   run the Monte Carlo codec once, export a JSON report
sweep      run the codec over a list of block lengths, export a CSV table
compare    export the secure / side-information-only / unconstrained
           polygons side by side and report their nesting

Exit codes are stable: 0 success, 1 domain violation, 2 unreadable or
malformed input, 3 size/budget overrun.  Every output file starts with a
``# config:`` comment embedding the seed and the full configuration, and
files are written atomically, so re-running a command with the same seed
reproduces the output byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import codec, region
from .channel import CodingScheme, induced_joint, load_spec, validate_channel, validate_scheme
from .errors import CapacityError, DomainError, ParseError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_CAPACITY = 3

# Leakage sample count used by simulate/sweep reports.
LEAKAGE_SAMPLES = 200


@dataclass(frozen=True)
class RunManifest:
    """Everything one command run depends on; echoed into its outputs."""

    command: str
    spec_path: str
    scheme_path: str | None
    out_path: str | None
    seed: int
    overrides: dict

    def config_line(self) -> str:
        doc = {
            "command": self.command,
            "spec": self.spec_path,
            "scheme": self.scheme_path,
            "seed": self.seed,
            **self.overrides,
        }
        return "# config: " + json.dumps(doc, sort_keys=True)


def _atomic_write(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=str(target.parent) or ".", prefix=target.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, str(target))
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_pair(spec_path: str, scheme_path: str | None):
    spec, scheme = load_spec(spec_path)
    if scheme_path is not None:
        _, scheme = load_spec(scheme_path)
    return spec, scheme


def _need_scheme(scheme: CodingScheme | None) -> CodingScheme:
    if scheme is None:
        raise ParseError("no scheme block found; provide --scheme or embed one in the document")
    return scheme


def _polygon_csv(manifest: RunManifest, rows: list[tuple[str, ...]], header: str) -> str:
    lines = [manifest.config_line(), header]
    lines.extend(",".join(str(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


def _region_rows(reg: region.RateRegion) -> list[tuple[str, ...]]:
    labels = reg.labels or tuple(
        ["O"] + [f"P{i}" for i in range(1, len(reg.vertices))]
    )
    return [(lab, repr(x), repr(y)) for lab, (x, y) in zip(labels, reg.vertices)]


# -- commands -------------------------------------------------------------------------


def _cmd_validate(args, manifest: RunManifest) -> int:
    spec, scheme = _load_pair(args.spec, args.scheme)
    problems = validate_channel(spec)
    if scheme is not None:
        problems += validate_scheme(spec, scheme)
    if problems:
        for line in problems:
            print(f"violation: {line}")
        return EXIT_DOMAIN
    print("ok")
    return EXIT_OK


def _cmd_region(args, manifest: RunManifest) -> int:
    spec, scheme = _load_pair(args.spec, args.scheme)
    joint = induced_joint(spec, _need_scheme(scheme))
    bounds = region.EVALUATORS[args.region](joint)
    poly = region.polygon(bounds, labels=True)
    _atomic_write(args.out, _polygon_csv(manifest, _region_rows(poly), "label,R1,R2"))
    print(f"wrote {len(poly.vertices)} vertices to {args.out}")
    return EXIT_OK


def _cmd_corners(args, manifest: RunManifest) -> int:
    spec, scheme = _load_pair(args.spec, args.scheme)
    joint = induced_joint(spec, _need_scheme(scheme))
    corners = region.corner_points(joint)
    rows = [(lab, repr(x), repr(y)) for lab, x, y in corners.rows()]
    _atomic_write(args.out, _polygon_csv(manifest, rows, "label,R1,R2"))
    print(f"wrote corner points to {args.out}")
    return EXIT_OK


def _cmd_frontier(args, manifest: RunManifest) -> int:
    spec, scheme = _load_pair(args.spec, args.scheme)
    schemes = [scheme] if scheme is not None else []
    hull = region.search_frontier(
        spec, args.region, budget=args.budget, seed=args.seed, schemes=schemes
    )
    _atomic_write(args.out, _polygon_csv(manifest, _region_rows(hull), "label,R1,R2"))
    print(f"wrote {len(hull.vertices)} hull vertices to {args.out}")
    return EXIT_OK


def _parse_block_lengths(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ParseError(f"--N expects a comma-separated list of integers: {exc}") from exc
    if not values:
        raise ParseError("--N expects at least one block length")
    return values


def _one_run(spec, scheme, n, args) -> codec.SimulationReport:
    joint = induced_joint(spec, scheme)
    rates = codec.assign_rates(joint, args.margin)
    cfg = codec.CodebookConfig(
        block_length=n,
        rates=rates,
        epsilon=args.epsilon,
        seed=args.seed,
        trials=args.trials,
    )
    return codec.simulate(spec, scheme, cfg, leakage_samples=LEAKAGE_SAMPLES)


def _cmd_simulate(args, manifest: RunManifest) -> int:
    spec, scheme = _load_pair(args.spec, args.scheme)
    lengths = _parse_block_lengths(args.N)
    if len(lengths) != 1:
        raise ParseError("simulate expects exactly one block length in --N")
    report = _one_run(spec, _need_scheme(scheme), lengths[0], args)
    doc = {"manifest": json.loads(manifest.config_line()[len("# config: "):]), **report.to_dict()}
    _atomic_write(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"wrote report to {args.out}")
    return EXIT_OK


def _fmt(value) -> str:
    return repr(float(value))


def _cmd_sweep(args, manifest: RunManifest) -> int:
    spec, scheme = _load_pair(args.spec, args.scheme)
    scheme = _need_scheme(scheme)
    lengths = _parse_block_lengths(args.N)
    lines = [
        manifest.config_line(),
        "N,R1,R2,Rp1,Rp2,Rs1,Rs2,err1,err2,enc_fail,leak1,leak2",
    ]
    for n in lengths:
        report = _one_run(spec, scheme, n, args)
        rates = report.realized_rates
        leak = report.leakage
        lines.append(
            ",".join(
                [
                    str(n),
                    _fmt(rates.r1),
                    _fmt(rates.r2),
                    _fmt(rates.rp1),
                    _fmt(rates.rp2),
                    _fmt(rates.rs1),
                    _fmt(rates.rs2),
                    _fmt(report.decode_error[0].value),
                    _fmt(report.decode_error[1].value),
                    _fmt(report.encoder_failure),
                    _fmt(leak[0].value if leak[0] else float("nan")),
                    _fmt(leak[1].value if leak[1] else float("nan")),
                ]
            )
        )
    _atomic_write(args.out, "\n".join(lines) + "\n")
    print(f"wrote {len(lengths)} rows to {args.out}")
    return EXIT_OK


def _cmd_compare(args, manifest: RunManifest) -> int:
    spec, scheme = _load_pair(args.spec, args.scheme)
    scheme = _need_scheme(scheme)
    joint = induced_joint(spec, scheme)
    polys = {
        "secure": region.polygon(region.eval_secure_si(joint), labels=True),
        "steinberg": region.polygon(region.eval_steinberg(joint), labels=True),
        "marton": region.polygon(region.eval_marton(joint), labels=True),
    }
    rows: list[tuple[str, ...]] = []
    for name, poly in polys.items():
        rows.extend((name,) + row for row in _region_rows(poly))
    _atomic_write(args.out, _polygon_csv(manifest, rows, "region,label,R1,R2"))
    if scheme.u_card == 1:
        inside_a = region.contains_region(polys["steinberg"], polys["secure"])
        inside_b = region.contains_region(polys["marton"], polys["steinberg"])
        print(f"containment: secure within steinberg: {'yes' if inside_a else 'no'}")
        print(f"containment: steinberg within marton: {'yes' if inside_b else 'no'}")
    else:
        print("containment: skipped (shared auxiliary U is not constant)")
    print(f"wrote {len(rows)} vertices to {args.out}")
    return EXIT_OK


# -- argument plumbing ----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="securebc",
        description="Rate regions and double-binning Monte Carlo for secure "
        "broadcasting with transmitter side-information.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True, needs_scheme_flag=True):
        p.add_argument("--spec", required=True, help="channel/scheme JSON document")
        if needs_scheme_flag:
            p.add_argument(
                "--scheme",
                default=None,
                help="document whose scheme block to use (default: the --spec file)",
            )
        if out_required:
            p.add_argument("--out", required=True, help="output file path")
        p.add_argument("--seed", type=int, default=0, help="reproducibility seed")

    p = sub.add_parser("validate", help="check a document and exit")
    common(p, out_required=False)

    p = sub.add_parser("region", help="polygon of one region kind for a fixed scheme")
    common(p)
    p.add_argument("--region", choices=sorted(region.EVALUATORS), default="secure")

    p = sub.add_parser("corners", help="corner points of the secure region")
    common(p)

    p = sub.add_parser("frontier", help="search schemes and export the hull")
    common(p)
    p.add_argument("--region", choices=sorted(region.EVALUATORS), default="secure")
    p.add_argument("--budget", type=int, default=5000, help="scheme evaluations")

    for name in ("simulate", "sweep"):
        p = sub.add_parser(name, help=f"{name} the Monte Carlo codec")
        common(p)
        p.add_argument("--N", required=True, help="comma-separated block lengths")
        p.add_argument("--trials", type=int, default=2000)
        p.add_argument("--epsilon", type=float, default=0.05)
        p.add_argument("--margin", type=float, default=0.1)

    p = sub.add_parser("compare", help="nested region export for a fixed scheme")
    common(p)
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "region": _cmd_region,
    "corners": _cmd_corners,
    "frontier": _cmd_frontier,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
}


def _manifest(args) -> RunManifest:
    spec_path = args.spec
    scheme_path = getattr(args, "scheme", None)
    for path in (spec_path, scheme_path):
        if path is not None and not Path(path).is_file():
            raise ParseError(f"input file not found: {path}")
    skip = {"command", "spec", "scheme", "out", "seed"}
    overrides = {
        key: value for key, value in sorted(vars(args).items()) if key not in skip
    }
    return RunManifest(
        command=args.command,
        spec_path=spec_path,
        scheme_path=scheme_path,
        out_path=getattr(args, "out", None),
        seed=args.seed,
        overrides=overrides,
    )


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        manifest = _manifest(args)
        return _HANDLERS[args.command](args, manifest)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
