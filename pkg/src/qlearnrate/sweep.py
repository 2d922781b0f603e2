"""Sweep orchestration: run configs, tau grids, worker pool, CSV output.

A sweep produces one row per (tau, method).  Rows are pure functions of
the configuration (fixed quadrature, no randomness), computed in any
order — possibly across processes — and sorted before writing, so the
emitted CSV is byte-identical for identical configs regardless of the
worker count.
"""
from __future__ import annotations

import hashlib
import importlib.resources as resources
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .exact_ho import ORDER_INTERACTION, ORDER_LITERAL, QuadratureSpec, exact_observables
from .information import UNNORMALIZED, LearningRecord, parity_projectors
from .oracle import oracle_observables
from .perturbation import linear_observables
from .systems import (
    EXPONENTIAL,
    LINEAR,
    DriveProtocol,
    HarmonicSystem,
    PoschlTellerSystem,
    build_ho,
    build_pt,
)

ENV_WORKERS = "QLEARNRATE_WORKERS"

CSV_COLUMNS = ("tau", "delta_chi", "tau_qsl", "omega", "method", "status")

_PROTOCOL_KINDS = {"exp": EXPONENTIAL, "lin": LINEAR}

FIGURE_IDS = ("fig1", "fig2", "fig3a", "fig3b", "fig4", "fig5", "fig6")


def config_schema() -> dict:
    with resources.files("qlearnrate.schema").joinpath("run_config.schema.json").open() as fh:
        return json.load(fh)


def load_preset(figure_id: str) -> dict:
    if figure_id not in FIGURE_IDS:
        raise ConfigurationError(f"unknown figure id {figure_id!r}; choose from {FIGURE_IDS}")
    with resources.files("qlearnrate.presets").joinpath(f"{figure_id}.json").open() as fh:
        return json.load(fh)


@dataclass(frozen=True)
class RunConfig:
    """Validated sweep configuration (see schema/run_config.schema.json)."""

    raw: dict

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        import jsonschema

        try:
            jsonschema.validate(data, config_schema())
        except jsonschema.ValidationError as err:
            raise ConfigurationError(f"invalid config: {err.message}") from err
        cfg = cls(raw=data)
        cfg._check_semantics()
        return cfg

    def _check_semantics(self):
        sys_kind = self.raw["system"]["kind"]
        if "exact" in self.methods and sys_kind != "ho":
            raise ConfigurationError("the exact method is only defined for the oscillator")
        grid = self.raw["tau_grid"]
        if grid["spacing"] == "log" and grid["min"] <= 0:
            raise ConfigurationError("log spacing requires tau_min > 0")
        if grid["min"] <= 0:
            raise ConfigurationError("tau values must be positive")
        if "oracle" in self.methods:
            dt = self.oracle_dt
            basis, _, _, _ = self.build_system()
            bohr = float(basis.energies[-1] - basis.energies[0])
            if dt * bohr > 0.05 + 1e-12:
                raise ConfigurationError(
                    f"oracle dt too coarse: dt * max Bohr frequency = {dt * bohr:.3f} > 0.05"
                )

    # -- accessors ---------------------------------------------------------
    @property
    def methods(self) -> tuple[str, ...]:
        return tuple(self.raw["methods"])

    @property
    def initial_level(self) -> int:
        return int(self.raw.get("initial_level", 0))

    @property
    def oracle_dt(self) -> float:
        return float(self.raw.get("oracle", {}).get("dt", 1e-4))

    @property
    def ordering(self) -> str:
        return {"interaction": ORDER_INTERACTION, "literal": ORDER_LITERAL}[
            self.raw.get("ordering", "interaction")
        ]

    @property
    def convention(self) -> str:
        return self.raw.get("convention", UNNORMALIZED)

    @property
    def trace_tol(self):
        return self.raw.get("trace_tol")

    @property
    def workers(self) -> int:
        return int(self.raw.get("workers", 1))

    def quadrature(self) -> QuadratureSpec:
        q = self.raw.get("quadrature", {})
        return QuadratureSpec(
            transform_order=int(q.get("transform_order", 64)),
            double_order=int(q.get("double_order", 48)),
            e_tau_nodes=int(q.get("e_tau_nodes", 96)),
        )

    @property
    def kernel_base_order(self) -> int:
        return int(self.raw.get("quadrature", {}).get("kernel_base_order", 16))

    def tau_values(self) -> np.ndarray:
        grid = self.raw["tau_grid"]
        lo, hi, count = grid["min"], grid["max"], int(grid["count"])
        if grid["spacing"] == "log":
            return np.geomspace(lo, hi, count)
        return np.linspace(lo, hi, count)

    def protocol(self, tau: float) -> DriveProtocol:
        p = self.raw["protocol"]
        return DriveProtocol(kind=_PROTOCOL_KINDS[p["kind"]],
                             delta_lambda=float(p["delta_lambda"]), tau=tau)

    def harmonic_system(self) -> HarmonicSystem:
        s = self.raw["system"]
        return HarmonicSystem(omega0=float(s["omega0"]),
                              n_max=int(s.get("n_max", 60)),
                              truncation_tol=float(s.get("truncation_tol", 1e-10)),
                              energy_shift=float(s.get("energy_shift", 0.0)))

    def build_system(self):
        s = self.raw["system"]
        if s["kind"] == "ho":
            return build_ho(self.harmonic_system())
        return build_pt(PoschlTellerSystem(nu=int(s["nu"]), eta=float(s.get("eta", 1.0)),
                                           half_width=float(s.get("grid", {}).get("half_width", 15.0)),
                                           n_grid=int(s.get("grid", {}).get("n_points", 3000))))

    def canonical_json(self) -> str:
        return json.dumps(self.raw, sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:12]


# -- row computation -------------------------------------------------------

_WORKER_CFG: RunConfig | None = None
_WORKER_CTX: dict | None = None


def _build_context(cfg: RunConfig) -> dict:
    basis, h0, x, v_op = cfg.build_system()
    return {
        "basis": basis,
        "h0": h0,
        "v_op": v_op,
        "setup": parity_projectors(basis, cfg.convention),
    }


def _worker_init(config_json: str):
    global _WORKER_CFG, _WORKER_CTX
    _WORKER_CFG = RunConfig.from_dict(json.loads(config_json))
    _WORKER_CTX = _build_context(_WORKER_CFG)


def _compute_row(cfg: RunConfig, ctx: dict, tau: float, method: str) -> LearningRecord:
    protocol = cfg.protocol(tau)
    if method == "exact":
        obs = exact_observables(cfg.harmonic_system(), protocol, tau,
                                quad=cfg.quadrature(), ordering=cfg.ordering)
        return obs.record
    if method == "lin":
        obs = linear_observables(ctx["basis"], ctx["v_op"], protocol, tau,
                                 initial_level=cfg.initial_level,
                                 setup=ctx["setup"],
                                 nodes=cfg.quadrature().e_tau_nodes,
                                 base_order=cfg.kernel_base_order,
                                 trace_tol=cfg.trace_tol)
        return obs.record
    if method == "oracle":
        return oracle_observables(ctx["basis"], ctx["h0"], ctx["v_op"], protocol,
                                  tau, cfg.oracle_dt, cfg.initial_level)
    raise ConfigurationError(f"unknown method {method!r}")


def _worker_row(job) -> tuple[int, LearningRecord]:
    idx, tau, method = job
    return idx, _compute_row(_WORKER_CFG, _WORKER_CTX, tau, method)


def effective_workers(cfg: RunConfig, override: int | None = None) -> int:
    env = os.environ.get(ENV_WORKERS)
    if env is not None:
        return max(1, int(env))
    if override is not None:
        return max(1, override)
    return max(1, cfg.workers)


def run_sweep(cfg: RunConfig, workers: int | None = None) -> list[LearningRecord]:
    """All sweep rows, sorted by (tau, method)."""
    jobs = []
    for tau in cfg.tau_values():
        for method in cfg.methods:
            jobs.append((len(jobs), float(tau), method))
    n_workers = effective_workers(cfg, workers)
    records: list[LearningRecord | None] = [None] * len(jobs)
    if n_workers == 1 or len(jobs) < 2:
        ctx = _build_context(cfg)
        for idx, tau, method in jobs:
            records[idx] = _compute_row(cfg, ctx, tau, method)
    else:
        with ProcessPoolExecutor(max_workers=n_workers, initializer=_worker_init,
                                 initargs=(cfg.canonical_json(),)) as pool:
            chunk = max(1, len(jobs) // (4 * n_workers))
            for idx, rec in pool.map(_worker_row, jobs, chunksize=chunk):
                records[idx] = rec
    out = [r for r in records if r is not None]
    out.sort(key=lambda r: (r.tau, r.method))
    return out


# -- CSV -------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def records_to_csv(records: list[LearningRecord], digest: str,
                   series: list[str] | None = None) -> str:
    """Render rows; floats use shortest round-trip formatting (deterministic)."""
    header = ",".join(CSV_COLUMNS + (("series",) if series is not None else ()))
    lines = [f"# config={digest}", header]
    for i, r in enumerate(records):
        row = [_fmt(r.tau), _fmt(r.delta_chi), _fmt(r.tau_qsl), _fmt(r.omega),
               r.method, r.status]
        if series is not None:
            row.append(series[i])
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def write_sweep_csv(cfg: RunConfig, path: str, workers: int | None = None) -> list[LearningRecord]:
    records = run_sweep(cfg, workers)
    text = records_to_csv(records, cfg.digest())
    with open(path, "w") as fh:
        fh.write(text)
    return records


# -- figure datasets ---------------------------------------------------------

def figure_dataset(figure_id: str, workers: int | None = None) -> str:
    """CSV text for one figure preset."""
    preset = load_preset(figure_id)
    digest = hashlib.sha256(
        json.dumps(preset, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()[:12]
    kind = preset["type"]
    if kind == "sweep-multi":
        records: list[LearningRecord] = []
        labels: list[str] = []
        for series in preset["series"]:
            cfg = RunConfig.from_dict(series["config"])
            recs = run_sweep(cfg, workers)
            records.extend(recs)
            labels.extend([series["label"]] * len(recs))
        order = sorted(range(len(records)),
                       key=lambda i: (records[i].tau, labels[i], records[i].method))
        return records_to_csv([records[i] for i in order],
                              digest, [labels[i] for i in order])
    if kind == "protocol-curves":
        return _protocol_curves_csv(preset, digest)
    if kind == "well-levels":
        return _well_levels_csv(preset, digest)
    raise ConfigurationError(f"unknown preset type {kind!r}")


def _protocol_curves_csv(preset: dict, digest: str) -> str:
    tau = float(preset["tau"])
    dl = float(preset["delta_lambda"])
    ts = np.linspace(0.0, tau, int(preset["count"]))
    p_exp = DriveProtocol(EXPONENTIAL, dl, tau)
    p_lin = DriveProtocol(LINEAR, dl, tau)
    lines = [f"# config={digest}", "t,lambda_exp,lambda_lin"]
    for t in ts:
        lines.append(f"{_fmt(t)},{_fmt(p_exp.value(t))},{_fmt(p_lin.value(t))}")
    return "\n".join(lines) + "\n"


def _well_levels_csv(preset: dict, digest: str) -> str:
    nu = int(preset["nu"])
    omega0 = float(preset["omega0"])
    shift = float(preset["energy_shift"])
    n_levels = int(preset.get("n_levels", 5))
    half = float(preset.get("half_width_plot", 3.0))
    count = int(preset.get("count", 401))
    pt_sys = PoschlTellerSystem(nu=nu, eta=1.0,
                                half_width=float(preset.get("half_width", 15.0)),
                                n_grid=int(preset.get("n_grid", 3000)))
    basis, _, _, _ = build_pt(pt_sys)
    lines = [f"# config={digest}", "kind,x,n,pt,ho"]
    for x in np.linspace(-half, half, count):
        v_pt = -0.5 * nu * (nu + 1) / np.cosh(x) ** 2
        v_ho = shift + 0.5 * omega0**2 * x**2
        lines.append(f"potential,{_fmt(x)},,{_fmt(v_pt)},{_fmt(v_ho)}")
    for n in range(n_levels):
        e_pt = basis.energies[n]
        e_ho = shift + omega0 * (n + 0.5)
        lines.append(f"level,,{n},{_fmt(e_pt)},{_fmt(e_ho)}")
    return "\n".join(lines) + "\n"
