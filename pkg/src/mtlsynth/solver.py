"""External SMT solver subprocess: SMT-LIB2 on stdin, verdict on stdout.

Any SMT-LIB2-compliant binary works; the command is taken from (in order)
an explicit `SolverConfig`, the MTLSYNTH_SOLVER environment variable, a
`z3` or `cvc5` executable on PATH, or the bundled Node/WebAssembly z3
front end.  One process per query; a returned model is re-evaluated with
the internal evaluator before anyone gets to see it.
"""

from __future__ import annotations

import os
import shlex
import shutil
import subprocess
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .lra import LraFormula, Model, emit_smtlib, evaluate, parse_model


class SolverError(RuntimeError):
    """The solver could not be located or produced unusable output."""


class ModelValidationError(RuntimeError):
    """A model came back that does not satisfy the formula we sent."""


@dataclass(frozen=True)
class CheckResult:
    status: str  # "sat" | "unsat" | "unknown"
    model: Model | None = None
    reason: str | None = None
    seconds: float = 0.0

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"

    @property
    def is_unsat(self) -> bool:
        return self.status == "unsat"


@dataclass
class SolverConfig:
    command: list[str]
    env_extra: dict[str, str] = field(default_factory=dict)
    timeout: float | None = None
    dump_dir: Path | None = None
    _dump_counter: int = 0

    def describe(self) -> str:
        return " ".join(self.command)


def _shim_command() -> tuple[list[str], dict[str, str]] | None:
    node = shutil.which("node")
    if node is None:
        return None
    shim = resources.files("mtlsynth").joinpath("data/z3_stdin.js")
    try:
        shim_path = str(shim)
    except TypeError:
        return None
    node_paths = []
    local = Path.cwd() / "node_modules"
    if (local / "z3-solver").exists():
        node_paths.append(str(local))
    try:
        probe = subprocess.run(
            ["npm", "root", "-g"], capture_output=True, text=True, timeout=30
        )
        if probe.returncode == 0:
            root = probe.stdout.strip()
            if root and (Path(root) / "z3-solver").exists():
                node_paths.append(root)
    except (OSError, subprocess.TimeoutExpired):
        pass
    if not node_paths:
        return None
    env = {"NODE_PATH": os.pathsep.join(node_paths)}
    return [node, shim_path], env


def resolve_solver(command: str | list[str] | None = None) -> SolverConfig:
    """Build a solver configuration from an explicit command, the environment,
    or by probing for a known solver."""
    if command:
        argv = shlex.split(command) if isinstance(command, str) else list(command)
        return SolverConfig(argv)
    from_env = os.environ.get("MTLSYNTH_SOLVER")
    if from_env:
        return SolverConfig(shlex.split(from_env))
    if shutil.which("z3"):
        return SolverConfig(["z3", "-in"])
    if shutil.which("cvc5"):
        return SolverConfig(["cvc5", "--lang", "smt2"])
    shim = _shim_command()
    if shim:
        argv, env = shim
        return SolverConfig(argv, env_extra=env)
    raise SolverError(
        "no SMT solver available: set MTLSYNTH_SOLVER, put z3/cvc5 on PATH, "
        "or `npm install -g z3-solver` for the bundled front end"
    )


def _dump(config: SolverConfig, script: str, outcome: str) -> Path | None:
    if config.dump_dir is None:
        return None
    config.dump_dir.mkdir(parents=True, exist_ok=True)
    config._dump_counter += 1
    path = config.dump_dir / f"query_{config._dump_counter:03d}.smt2"
    path.write_text(script + f"\n; result: {outcome}\n", encoding="utf-8")
    return path


def check_sat(formula: LraFormula, config: SolverConfig) -> CheckResult:
    """Run the solver on `formula`.  Sat results carry a validated model;
    crashes and timeouts come back as `unknown` with a reason."""
    script = emit_smtlib(formula)
    env = dict(os.environ)
    env.update(config.env_extra)
    started = time.monotonic()
    try:
        proc = subprocess.run(
            config.command,
            input=script,
            capture_output=True,
            text=True,
            timeout=config.timeout,
            env=env,
        )
    except subprocess.TimeoutExpired:
        _dump(config, script, "timeout")
        return CheckResult("unknown", reason=f"timeout after {config.timeout}s",
                           seconds=time.monotonic() - started)
    except OSError as exc:
        raise SolverError(f"cannot run solver {config.describe()!r}: {exc}") from exc
    elapsed = time.monotonic() - started

    verdict = None
    rest_lines: list[str] = []
    for line in proc.stdout.splitlines():
        stripped = line.strip()
        if verdict is None and stripped in ("sat", "unsat", "unknown"):
            verdict = stripped
            continue
        rest_lines.append(line)
    if verdict is None:
        _dump(config, script, "no verdict")
        detail = (proc.stdout + proc.stderr).strip()[:500]
        return CheckResult(
            "unknown",
            reason=f"solver produced no verdict (exit {proc.returncode}): {detail}",
            seconds=elapsed,
        )
    _dump(config, script, verdict)
    if verdict != "sat":
        return CheckResult(verdict, reason=None if verdict == "unsat" else "solver says unknown",
                           seconds=elapsed)
    model = parse_model("\n".join(rest_lines))
    if not evaluate(formula, model):
        raise ModelValidationError(
            "solver returned a model that fails internal re-evaluation; "
            "this points at an encoding bug or an incompatible solver"
        )
    return CheckResult("sat", model=model, seconds=elapsed)
