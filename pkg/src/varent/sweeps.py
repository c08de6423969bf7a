"""
Parameter sweeps over uniform-angle chain circuits.

A sweep fixes one rotation angle and one entangling phase per layer, then
varies either the rotation angle or the phase of one layer over an inclusive
grid ``start, start + step, ..., end``. At each point it records the exact
entanglement of the target qubit (Schmidt oracle), a shot-sampled estimate,
and, where known, a closed-form value.

Sweep config files are JSON::

    {
      "n_qubits": 3, "depth": 2, "topology": {"kind": "chain"},
      "layer_thetas": ["pi/2", null], "layer_phis": ["pi", "pi"],
      "sweep": {"parameter": "theta", "layer": 1},
      "range": {"start": 0, "end": "2*pi", "step": "pi/32"},
      "qubit": 1, "shots": 1024, "seed": 0,
      "closed_form": "theta1_k2", "published_formula": null
    }

Angles may be numbers or strings such as ``"pi/32"``, ``"-3*pi/4"``. The swept
entry in ``layer_thetas``/``layer_phis`` is ignored. ``shots: 0`` skips sampling.
Point ``i`` samples with seed ``seed + 3 * i`` (three consecutive sub-seeds per
point, one per axis).
"""
from __future__ import annotations

import csv
import io
import json
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Callable

from .circuits import Topology, uniform_layers, run
from .entanglement import (
    closed_form_k2,
    closed_form_phi_k1,
    closed_form_qgan_k1,
    closed_form_theta1_k2,
    entanglement_schmidt_oracle,
)
from .errors import ConfigurationError
from .measurement import DEFAULT_SHOTS, estimate_state_entanglement

PI = math.pi

CLOSED_FORMS: dict[str, Callable[[float], float]] = {
    "qgan_k1": lambda x: closed_form_qgan_k1(x, x, x),
    "theta1_k2": closed_form_theta1_k2,
    "k2_equal": lambda x: closed_form_k2(x, x, x),
    "phi_k1": closed_form_phi_k1,
}

# Expressions published for the theta_0 (k=2) and phi_1 (k=2) curves. They leave
# [0, 1/2] and are evaluated only to report their deviation from the exact curve.
PUBLISHED_FORMULAS: dict[str, Callable[[float], float]] = {
    "theta0_k2": lambda x: (2.0 - abs(math.sin(2.0 * x))) / 2.0,
    "phi1_k2": lambda x: (1.0 - abs(math.cos(x) * (1.0 + math.cos(x)))) / 2.0,
}

_ANGLE_RE = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:\.\d*)?|\.\d+)\s*\*?\s*)?pi\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$"
)


def parse_angle(value: Any) -> float:
    """Parse a number or an expression like ``"3*pi/4"`` into radians."""
    if isinstance(value, bool):
        raise ConfigurationError(f"angle expected, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _ANGLE_RE.match(value)
        if m:
            coef = float(m["coef"]) if m["coef"] else 1.0
            den = float(m["den"]) if m["den"] else 1.0
            if den == 0:
                raise ConfigurationError(f"angle {value!r} divides by zero")
            out = coef * PI / den
            return -out if m["sign"] == "-" else out
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigurationError(f"cannot parse angle {value!r}")


@dataclass(frozen=True)
class SweepConfig:
    n_qubits: int
    depth: int
    layer_thetas: tuple[float | None, ...]
    layer_phis: tuple[float | None, ...]
    parameter: str
    layer: int
    start: float
    end: float
    step: float
    qubit: int = 1
    shots: int = DEFAULT_SHOTS
    seed: int = 0
    topology: Topology = field(default_factory=Topology.chain)
    closed_form: str | None = None
    published_formula: str | None = None
    name: str = "custom"

    def __post_init__(self):
        if self.parameter not in ("theta", "phi"):
            raise ConfigurationError(f"sweep.parameter must be 'theta' or 'phi', got {self.parameter!r}")
        if not 0 <= self.layer < self.depth:
            raise ConfigurationError(f"sweep.layer {self.layer} does not exist in a depth-{self.depth} circuit")
        if len(self.layer_thetas) != self.depth or len(self.layer_phis) != self.depth:
            raise ConfigurationError(f"layer_thetas and layer_phis need {self.depth} entries each")
        fixed_thetas = [t for j, t in enumerate(self.layer_thetas) if not (self.parameter == "theta" and j == self.layer)]
        fixed_phis = [p for j, p in enumerate(self.layer_phis) if not (self.parameter == "phi" and j == self.layer)]
        if any(v is None for v in fixed_thetas + fixed_phis):
            raise ConfigurationError("every non-swept layer angle and phase must be given")
        if not (self.step > 0):
            raise ConfigurationError(f"range.step must be > 0, got {self.step}")
        if not (self.start < self.end):
            raise ConfigurationError(f"range.start must be < range.end, got {self.start} >= {self.end}")
        if not 0 <= self.qubit < self.n_qubits:
            raise ConfigurationError(f"qubit {self.qubit} out of range for {self.n_qubits} qubits")
        if self.shots < 0:
            raise ConfigurationError(f"shots must be >= 0, got {self.shots}")
        if self.closed_form is not None and self.closed_form not in CLOSED_FORMS:
            raise ConfigurationError(f"unknown closed_form {self.closed_form!r}; known: {sorted(CLOSED_FORMS)}")
        if self.published_formula is not None and self.published_formula not in PUBLISHED_FORMULAS:
            raise ConfigurationError(f"unknown published_formula {self.published_formula!r}")
        self.topology.edges(self.n_qubits)

    @property
    def n_points(self) -> int:
        return int(math.floor((self.end - self.start) / self.step + 1e-9)) + 1

    def grid(self) -> list[float]:
        return [self.start + i * self.step for i in range(self.n_points)]

    def circuit_at(self, value: float):
        thetas = list(self.layer_thetas)
        phis = list(self.layer_phis)
        (thetas if self.parameter == "theta" else phis)[self.layer] = value
        return uniform_layers(self.n_qubits, thetas, phis, self.topology)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_qubits": self.n_qubits,
            "depth": self.depth,
            "topology": self.topology.to_dict(),
            "layer_thetas": list(self.layer_thetas),
            "layer_phis": list(self.layer_phis),
            "sweep": {"parameter": self.parameter, "layer": self.layer},
            "range": {"start": self.start, "end": self.end, "step": self.step},
            "qubit": self.qubit,
            "shots": self.shots,
            "seed": self.seed,
            "closed_form": self.closed_form,
            "published_formula": self.published_formula,
        }

    @classmethod
    def from_dict(cls, data: Any) -> SweepConfig:
        if not isinstance(data, dict):
            raise ConfigurationError("sweep config: expected a JSON object")
        try:
            sweep = data["sweep"]
            rng = data["range"]
            depth = int(data["depth"])
            kwargs = dict(
                name=str(data.get("name", "custom")),
                n_qubits=int(data.get("n_qubits", 3)),
                depth=depth,
                topology=Topology.from_dict(data.get("topology", {"kind": "chain"})),
                layer_thetas=tuple(None if v is None else parse_angle(v) for v in data["layer_thetas"]),
                layer_phis=tuple(None if v is None else parse_angle(v) for v in data.get("layer_phis", ["pi"] * depth)),
                parameter=str(sweep["parameter"]),
                layer=int(sweep["layer"]),
                start=parse_angle(rng["start"]),
                end=parse_angle(rng["end"]),
                step=parse_angle(rng["step"]),
                qubit=int(data.get("qubit", 1)),
                shots=int(data.get("shots", DEFAULT_SHOTS)),
                seed=int(data.get("seed", 0)),
                closed_form=data.get("closed_form"),
                published_formula=data.get("published_formula"),
            )
        except KeyError as exc:
            raise ConfigurationError(f"sweep config: missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigurationError):
                raise
            raise ConfigurationError(f"sweep config: {exc}") from None
        return cls(**kwargs)


def _preset(name, depth, thetas, phis, parameter, layer, end, closed=None, published=None) -> SweepConfig:
    return SweepConfig(
        name=name,
        n_qubits=3,
        depth=depth,
        layer_thetas=thetas,
        layer_phis=phis,
        parameter=parameter,
        layer=layer,
        start=0.0,
        end=end,
        step=PI / 32,
        qubit=1,
        closed_form=closed,
        published_formula=published,
    )


PRESETS: dict[str, SweepConfig] = {
    # theta_{i,0} = theta swept, phi_{i,1} = pi, k = 1
    "fig5a": _preset("fig5a", 1, (None,), (PI,), "theta", 0, 2 * PI, closed="qgan_k1"),
    # theta_{i,0} = pi/2, theta_{i,1} = theta_1 swept, phi_{i,1} = phi_{i,2} = pi
    "fig5b": _preset("fig5b", 2, (PI / 2, None), (PI, PI), "theta", 1, 2 * PI, closed="theta1_k2"),
    # theta_{i,0} = theta_0 swept, theta_{i,1} = pi/2, phi_{i,1} = phi_{i,2} = pi
    "fig5c": _preset("fig5c", 2, (None, PI / 2), (PI, PI), "theta", 0, 2 * PI, published="theta0_k2"),
    # theta_{i,0} = pi/2, phi_{i,1} = phi swept over [0, 4 pi], k = 1
    "fig6a": _preset("fig6a", 1, (PI / 2,), (None,), "phi", 0, 4 * PI, closed="phi_k1"),
    # theta_{i,0} = pi/2, phi_{i,1} = phi_1 swept, phi_{i,2} = pi, theta_{i,1} = pi/2
    "fig6b": _preset("fig6b", 2, (PI / 2, PI / 2), (None, PI), "phi", 0, 4 * PI, published="phi1_k2"),
}


@dataclass(frozen=True)
class SweepPoint:
    param: float
    e_closed: float | None
    e_exact: float
    e_sampled: float | None
    stderr: float | None
    e_paper_formula: float | None = None

    @property
    def paper_formula_deviation(self) -> float | None:
        if self.e_paper_formula is None:
            return None
        return self.e_paper_formula - self.e_exact


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    points: tuple[SweepPoint, ...]


def evaluate_point(config: SweepConfig, index: int, value: float) -> SweepPoint:
    state = run(config.circuit_at(value))
    e_exact = entanglement_schmidt_oracle(state, config.qubit)
    e_sampled = stderr = None
    if config.shots > 0:
        est = estimate_state_entanglement(state, config.qubit, config.shots, config.seed + 3 * index)
        e_sampled, stderr = est.value, est.std_error
    closed = CLOSED_FORMS[config.closed_form](value) if config.closed_form else None
    printed = PUBLISHED_FORMULAS[config.published_formula](value) if config.published_formula else None
    return SweepPoint(value, closed, e_exact, e_sampled, stderr, printed)


def run_sweep(config: SweepConfig, workers: int = 1) -> SweepResult:
    """Evaluate every grid point; rows come back in grid order for any ``workers``."""
    grid = config.grid()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(lambda iv: evaluate_point(config, *iv), enumerate(grid)))
    else:
        points = [evaluate_point(config, i, v) for i, v in enumerate(grid)]
    return SweepResult(config, tuple(points))


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


def csv_header(config: SweepConfig) -> list[str]:
    header = ["param", "e_closed", "e_exact", "e_sampled", "stderr"]
    if config.published_formula:
        header += ["e_paper_formula", "paper_formula_deviation"]
    return header


def to_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(result.config))
    for p in result.points:
        row = [_fmt(p.param), _fmt(p.e_closed), _fmt(p.e_exact), _fmt(p.e_sampled), _fmt(p.stderr)]
        if result.config.published_formula:
            row += [_fmt(p.e_paper_formula), _fmt(p.paper_formula_deviation)]
        writer.writerow(row)
    return buf.getvalue()


def to_json(result: SweepResult) -> str:
    rows = []
    for p in result.points:
        row = asdict(p)
        if result.config.published_formula:
            row["paper_formula_deviation"] = p.paper_formula_deviation
        else:
            del row["e_paper_formula"]
        rows.append(row)
    return json.dumps({"config": result.config.to_dict(), "points": rows}, indent=2) + "\n"


def with_overrides(config: SweepConfig, **overrides) -> SweepConfig:
    """Copy of ``config`` with the non-``None`` overrides applied and revalidated."""
    return replace(config, **{k: v for k, v in overrides.items() if v is not None})
