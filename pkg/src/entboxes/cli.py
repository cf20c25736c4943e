"""Command-line entry point.

Commands: validate, structure, bounds, sweep, signal, make. Structured output
is JSON (one document per run); sweeps emit CSV. Exit codes: 0 for pass
verdicts, 1 for fail verdicts, 2 for usage or schema errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .boxes import (
    Box,
    BoxSchemaError,
    BoxTask,
    analyze_structure,
    box_to_json,
    canonical_box,
    load_box,
    matrix_to_json,
    random_box,
    save_box,
    validate,
)
from .commbounds import (
    cv_lower_depolarize,
    cv_lower_zflip,
    dense_coding_demo,
    kraus_alphabet_map,
    optimize_1d,
    signaling_test,
    task_summary,
    twirled_merge_chi,
    unitary_alphabet_map,
)
from .boxes import canonical_input
from .qstate import pauli

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

PROTOCOLS = ("zflip", "depolarize", "dense-coding", "custom")


@dataclass
class RunConfig:
    command: str
    box_path: str | None = None
    task: str | None = None
    seed: int | None = None
    tol: float = 1e-9
    output: str = "json"
    grid: int = 1001
    out: str | None = None
    protocol: str | None = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("--tol must be positive")
        if self.grid < 2:
            raise ValueError("--grid must be at least 2")
        if self.output not in ("json", "csv"):
            raise ValueError("--output must be json or csv")

    def to_dict(self) -> dict:
        return asdict(self)


def _parse_task(name: str | None) -> BoxTask:
    if name is None:
        raise ValueError("--task is required for this command")
    try:
        return BoxTask(name)
    except ValueError:
        raise ValueError(
            f"unknown task {name!r}; expected one of "
            + ", ".join(t.value for t in BoxTask)
        ) from None


def _resolve_box(cfg: RunConfig) -> Box:
    if cfg.box_path is not None:
        return load_box(cfg.box_path)
    task = _parse_task(cfg.task)
    if cfg.seed is None:
        return canonical_box(task)
    return random_box(task, cfg.seed)


def cmd_validate(cfg: RunConfig) -> tuple[dict, int]:
    box = _resolve_box(cfg)
    vrep = validate(box, tol=cfg.tol)
    srep = analyze_structure(box)
    code = EXIT_PASS if (vrep.verdict and srep.verdict) else EXIT_FAIL
    return {"validate": vrep.to_dict(), "structure": srep.to_dict()}, code


def cmd_structure(cfg: RunConfig) -> tuple[dict, int]:
    box = _resolve_box(cfg)
    srep = analyze_structure(box)
    return {"structure": srep.to_dict()}, EXIT_PASS if srep.verdict else EXIT_FAIL


def cmd_bounds(cfg: RunConfig) -> tuple[dict, int]:
    task = _parse_task(cfg.task)
    cc, cv = task_summary(task)
    return {"cc": cc.to_dict(), "cv": cv.to_dict()}, EXIT_PASS


def _sweep_rows(cfg: RunConfig) -> tuple[list[dict], dict]:
    box = canonical_box(BoxTask.TWO_EPR_TO_GHZ)
    result = cv_lower_depolarize(box, grid=cfg.grid)
    chi_upper = np.array([twirled_merge_chi(p) for p in result.curve_p])
    i_lo = int(np.argmax(result.curve_chi))
    i_up = int(np.argmax(chi_upper))
    rows = [
        {
            "p": float(p),
            "chi_lower": float(cl),
            "chi_upper": float(cu),
            "max_lower": int(i == i_lo),
            "max_upper": int(i == i_up),
        }
        for i, (p, cl, cu) in enumerate(zip(result.curve_p, result.curve_chi, chi_upper))
    ]
    p_up, chi_up = optimize_1d(twirled_merge_chi, 0.0, 1.0, tol=1e-9)
    maxima = {
        "lower": {"p": result.p_star, "chi": result.chi_max},
        "upper": {"p": p_up, "chi": chi_up},
        "grid_lower": {"p": rows[i_lo]["p"], "chi": rows[i_lo]["chi_lower"]},
        "grid_upper": {"p": rows[i_up]["p"], "chi": rows[i_up]["chi_upper"]},
    }
    return rows, maxima


def cmd_sweep(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.task is not None and _parse_task(cfg.task) is not BoxTask.TWO_EPR_TO_GHZ:
        raise ValueError("sweep is defined for the 2epr-ghz task")
    rows, maxima = _sweep_rows(cfg)
    if cfg.output == "csv":
        lines = ["p,chi_lower,chi_upper,max_lower,max_upper"]
        for r in rows:
            lines.append(
                f"{r['p']:.12g},{r['chi_lower']:.12g},{r['chi_upper']:.12g},"
                f"{r['max_lower']},{r['max_upper']}"
            )
        text = "\n".join(lines) + "\n"
        if cfg.out:
            Path(cfg.out).write_text(text)
        else:
            sys.stdout.write(text)
        return {"rows": len(rows), "maxima": maxima}, EXIT_PASS
    return {"curve": rows, "maxima": maxima}, EXIT_PASS


def cmd_signal(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.protocol not in PROTOCOLS:
        raise ValueError(f"--protocol must be one of {', '.join(PROTOCOLS)}")
    box = _resolve_box(cfg)
    if cfg.protocol == "zflip":
        if box.task is BoxTask.TWO_EPR_TO_GHZ:
            raise ValueError("zflip protocol is incompatible with 2epr-ghz boxes")
        res = cv_lower_zflip(box, tol=cfg.tol)
        return {"protocol": "zflip", **res.to_dict()}, (
            EXIT_PASS if res.bits == 1.0 else EXIT_FAIL
        )
    if cfg.protocol == "depolarize":
        if box.task is not BoxTask.TWO_EPR_TO_GHZ:
            raise ValueError("depolarize protocol needs a 2epr-ghz box")
        res = cv_lower_depolarize(box, grid=cfg.grid)
        return {"protocol": "depolarize", **res.to_dict()}, EXIT_PASS
    if cfg.protocol == "dense-coding":
        if box.task is not BoxTask.ES:
            raise ValueError("dense-coding protocol needs an es (teleportation) box")
        res = dense_coding_demo(box, tol=cfg.tol)
        return {"protocol": "dense-coding", **res.to_dict()}, (
            EXIT_PASS if res.bits == 2.0 else EXIT_FAIL
        )
    # custom: identity vs computational-basis measurement on Charlie's input
    rho_in = canonical_input(box.task)
    targets = (2, 3) if box.task is not BoxTask.GHZ_TO_EPR else (2,)
    dim_c = box.charlie_input_dim
    projectors = [np.diag((np.arange(dim_c) == m).astype(complex)) for m in range(dim_c)]
    maps = [
        unitary_alphabet_map(0, np.eye(dim_c, dtype=complex), rho_in.dims, targets),
        kraus_alphabet_map(1, projectors, rho_in.dims, targets),
    ]
    rep = signaling_test(box.task_superoperator(), rho_in, maps, receiver=(0, 1), tol=cfg.tol)
    payload = {"protocol": "custom", **rep.to_dict()}
    payload["outputs"] = [matrix_to_json(out.matrix) for out in rep.outputs]
    return payload, EXIT_PASS


def cmd_make(cfg: RunConfig) -> tuple[dict, int]:
    task = _parse_task(cfg.task)
    box = canonical_box(task) if cfg.seed is None else random_box(task, cfg.seed)
    doc = box_to_json(box)
    if cfg.out:
        save_box(box, cfg.out)
        return {"written": cfg.out, "task": task.value, "branches": len(box.branches)}, EXIT_PASS
    return {"box": doc}, EXIT_PASS


_COMMANDS = {
    "validate": cmd_validate,
    "structure": cmd_structure,
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
    "signal": cmd_signal,
    "make": cmd_make,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entboxes",
        description="Analyze LOCC entanglement-redistribution boxes and their "
        "communication cost/value bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("validate", "check a box against its task's defining action and structure"),
        ("structure", "run the structural analysis only"),
        ("bounds", "report CC and CV bounds for a task"),
        ("sweep", "sample the merge-task Holevo curves chi(p)"),
        ("signal", "run a signaling protocol through a box"),
        ("make", "emit a canonical or seeded random box as JSON"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--box", dest="box_path", default=None, help="box JSON file")
        p.add_argument("--task", default=None, help="es | 2epr-ghz | ghz-epr")
        p.add_argument("--seed", type=int, default=None, help="seed for random boxes")
        p.add_argument("--tol", type=float, default=1e-9, help="verdict tolerance")
        p.add_argument("--grid", type=int, default=1001, help="sweep sample count")
        p.add_argument("--output", choices=("json", "csv"), default=None)
        p.add_argument("--out", default=None, help="write output to this path")
        if name == "signal":
            p.add_argument("--protocol", choices=PROTOCOLS, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    default_output = "csv" if args.command == "sweep" else "json"
    started = time.monotonic()
    try:
        cfg = RunConfig(
            command=args.command,
            box_path=args.box_path,
            task=args.task,
            seed=args.seed,
            tol=args.tol,
            output=args.output or default_output,
            grid=args.grid,
            out=args.out,
            protocol=getattr(args, "protocol", None),
        )
        result, code = _COMMANDS[cfg.command](cfg)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = {
        "command": cfg.command,
        "config": cfg.to_dict(),
        "result": result,
        "version": __version__,
        "elapsed_ms": round(1000.0 * (time.monotonic() - started), 3),
    }
    if cfg.output == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
        if cfg.out and cfg.command != "make":
            Path(cfg.out).write_text(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
