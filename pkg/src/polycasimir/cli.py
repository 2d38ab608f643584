"""Command-line surface: one subcommand per operation, machine-readable output.

Every invocation validates its flags up front, routes through the same request
models and handlers as the HTTP service, writes the result to stdout or --out,
and emits exactly one run manifest (a single JSON line on stderr, plus a
`<out>.manifest.json` sidecar when --out is given).  Identical argv produces
byte-identical output, including across --threads settings.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field

from pydantic import ValidationError

from . import service
from .report import emit
from .specfun import BudgetError, ConvergenceError, DomainError, PoleError

__all__ = ["RunManifest", "main"]

TOOL_VERSION = "0.1.0"

_SOURCE_MAP = {"formula": "formula", "paper-constants": "paper_constants"}


@dataclass(frozen=True)
class RunManifest:
    command: str
    flags: dict
    tool_version: str = TOOL_VERSION
    outputs: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _dict_bytes(obj: dict, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(obj, separators=(",", ":")) + "\n").encode()

    def flatten(prefix: str, d: dict, rows: list) -> None:
        for k, v in d.items():
            key = f"{prefix}.{k}" if prefix else str(k)
            if isinstance(v, dict):
                flatten(key, v, rows)
            elif isinstance(v, float):
                rows.append(f"{key},{_fmt(v)}")
            else:
                rows.append(f"{key},{v}")

    rows: list[str] = ["key,value"]
    flatten("", obj, rows)
    return ("\n".join(rows) + "\n").encode()


def _add_io_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", default=None, metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycasimir",
        description="Polygonal drum spectra and zeta-regularized vacuum energies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", help="zeros of the Bessel function J_m")
    p.add_argument("--order", type=int, default=0, help="Bessel order m >= 0")
    p.add_argument("--count", type=int, default=10)
    _add_io_flags(p)

    p = sub.add_parser("spectrum", help="Dirichlet frequencies of one domain")
    p.add_argument("--domain", choices=("disk", "square", "polygon"), default="disk")
    p.add_argument("--sides", type=int, default=4)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--order", type=int, choices=(2, 3, 4), default=4,
                   help="1/N series truncation order")
    p.add_argument("--threads", type=int, default=None)
    _add_io_flags(p)

    p = sub.add_parser("compare", help="paired polygon/square frequency table")
    p.add_argument("--grid", type=int, default=100)
    p.add_argument("--sides", type=int, default=4)
    p.add_argument("--pairing", choices=("rank", "index"), default="rank")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--order", type=int, choices=(2, 3, 4), default=4)
    p.add_argument("--threads", type=int, default=None)
    _add_io_flags(p)

    p = sub.add_parser("regimes", help="asymptotic index-regime ratios")
    p.add_argument("--sides", type=int, default=4)
    _add_io_flags(p)

    p = sub.add_parser("circle-energy", help="regularized vacuum energy of the circle")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--source", choices=tuple(_SOURCE_MAP), default="paper-constants")
    _add_io_flags(p)

    p = sub.add_parser("square-energy", help="vacuum energy of the unit-cell square")
    p.add_argument("--length", type=float, default=1.0)
    p.add_argument("--with-terms", action="store_true")
    p.add_argument("--epsilon", type=float, default=None,
                   help="cross-check the s -> -1/2 limit at offset epsilon")
    _add_io_flags(p)

    p = sub.add_parser("polygon-energy", help="vacuum energy of the regular N-gon")
    p.add_argument("--sides", type=int, default=4)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--source", choices=tuple(_SOURCE_MAP), default="paper-constants")
    p.add_argument("--order", type=int, choices=(2, 3, 4), default=4)
    _add_io_flags(p)

    p = sub.add_parser("rd-scale", help="flat-space x polygon energy scale factor")
    p.add_argument("--dims", type=int, default=3)
    p.add_argument("--sides", type=int, default=4)
    p.add_argument("--s", type=float, required=True)
    _add_io_flags(p)

    p = sub.add_parser("cylinder", help="polygonal cylinder interaction energy")
    p.add_argument("--sides", type=int, default=4)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--length", type=float, default=1.0, help="axial half-length a")
    p.add_argument("--method", choices=("exact", "asymptotic", "both"), default="exact")
    p.add_argument("--tm-index", type=int, default=None,
                   help="axial index k: report one TM resonator mode instead")
    _add_io_flags(p)

    p = sub.add_parser("inflate", help="first-order response to inflating the disk")
    p.add_argument("--delta-r", type=float, required=True)
    p.add_argument("--eigenvalue", type=float, default=None)
    p.add_argument("--simplified", action="store_true")
    _add_io_flags(p)

    p = sub.add_parser("reconcile", help="closed-form vs printed-constant table")
    _add_io_flags(p)

    return parser


def _run_zeros(ns) -> bytes:
    res = service.handle_zeros(service.ZerosRequest(order=ns.order, count=ns.count))
    if ns.format == "json":
        return (json.dumps(res["zeros"]) + "\n").encode()
    lines = [f"# order,{res['order']}", "n,zero"]
    lines += [f"{i},{_fmt(z)}" for i, z in enumerate(res["zeros"], start=1)]
    return ("\n".join(lines) + "\n").encode()


def _run_spectrum(ns) -> bytes:
    req = service.SpectrumRequest(domain=ns.domain, sides=ns.sides, grid=ns.grid,
                                  count=ns.count, radius=ns.radius, order=ns.order,
                                  threads=ns.threads)
    return emit(service.handle_spectrum(req), ns.format)


def _run_compare(ns) -> bytes:
    req = service.CompareRequest(grid=ns.grid, sides=ns.sides, pairing=ns.pairing,
                                 radius=ns.radius, order=ns.order, threads=ns.threads)
    return emit(service.handle_compare(req), ns.format)


def _run_regimes(ns) -> bytes:
    return emit(service.handle_regimes(service.RegimesRequest(sides=ns.sides)), ns.format)


def _run_circle_energy(ns) -> bytes:
    req = service.CircleEnergyRequest(radius=ns.radius, source=_SOURCE_MAP[ns.source])
    return emit(service.handle_circle_energy(req), ns.format)


def _run_square_energy(ns) -> bytes:
    req = service.SquareEnergyRequest(length=ns.length, with_terms=ns.with_terms,
                                      epsilon=ns.epsilon)
    return _dict_bytes(service.handle_square_energy(req), ns.format)


def _run_polygon_energy(ns) -> bytes:
    req = service.PolygonEnergyRequest(sides=ns.sides, radius=ns.radius,
                                       source=_SOURCE_MAP[ns.source], order=ns.order)
    return emit(service.handle_polygon_energy(req), ns.format)


def _run_rd_scale(ns) -> bytes:
    req = service.RdScaleRequest(dims=ns.dims, sides=ns.sides, s=ns.s)
    return _dict_bytes(service.handle_rd_scale(req), ns.format)


def _run_cylinder(ns) -> bytes:
    req = service.CylinderRequest(sides=ns.sides, count=ns.count, length=ns.length,
                                  method=ns.method, tm_index=ns.tm_index)
    return _dict_bytes(service.handle_cylinder(req), ns.format)


def _run_inflate(ns) -> bytes:
    req = service.InflateRequest(delta_r=ns.delta_r, eigenvalue=ns.eigenvalue,
                                 simplified=ns.simplified)
    return _dict_bytes(service.handle_inflate(req), ns.format)


def _run_reconcile(ns) -> bytes:
    return emit(service.handle_reconcile(service.ReconcileRequest()), ns.format)


_RUNNERS = {
    "zeros": _run_zeros,
    "spectrum": _run_spectrum,
    "compare": _run_compare,
    "regimes": _run_regimes,
    "circle-energy": _run_circle_energy,
    "square-energy": _run_square_energy,
    "polygon-energy": _run_polygon_energy,
    "rd-scale": _run_rd_scale,
    "cylinder": _run_cylinder,
    "inflate": _run_inflate,
    "reconcile": _run_reconcile,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        payload = _RUNNERS[ns.command](ns)
    except (ValidationError, DomainError, PoleError) as exc:
        print(f"polycasimir {ns.command}: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, BudgetError) as exc:
        print(f"polycasimir {ns.command}: {exc}", file=sys.stderr)
        return 1

    manifest = RunManifest(
        command=ns.command,
        flags={k.replace("_", "-"): v for k, v in sorted(vars(ns).items())
               if k != "command"},
        outputs=[ns.out] if ns.out else [],
    )
    if ns.out:
        with open(ns.out, "wb") as fh:
            fh.write(payload)
        with open(ns.out + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(manifest.to_json() + "\n")
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    print(manifest.to_json(), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
