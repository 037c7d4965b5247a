"""Parameter sweeps, figure presets and their CSV / gnuplot output."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from ._pipeline import ordered_map
from .dkp import DkpChannel, dkp_phase_shift, dkp_wave_number
from .errors import ComplexExponent, EvanescentChannel, HellmannError
from .model import HellmannPotential
from .sse import (
    EQUAL_MASS_CONVENTION,
    UNEQUAL_MASS_CONVENTION,
    SseChannel,
    sse_phase_shift,
    sse_wave_number,
)

CSV_FIELDS = (
    "model", "sweep_var", "sweep_value", "a", "b", "rho", "energy", "m_or_m1", "m2",
    "mu", "mass_index_cubed", "k", "delta_rad", "T", "sigma_partial", "identity_ok",
    "evanescent",
)
SWEEP_PARAM = {"J": "J", "l": "l", "E": "energy", "rho": "rho", "a": "a", "b": "b"}
INTEGER_SWEEPS = ("J", "l")


def _sse_preset(a, b):
    return {"model": "sse", "a": a, "b": b, "energy": 1.0, "rho": 0.5,
            "sweep": "l", "start": 0, "stop": 10, "count": 11}


# Figure captions; fig1 runs three screening values and an E = 2 companion
# because the caption's E = m = 1 leaves every partial wave evanescent.
PRESETS = {
    "fig1": {"model": "dkp", "a": 0.15, "b": 0.15, "energy": 1.0, "mass": 1.0, "rho": 0.1,
             "sweep": "J", "start": 0, "stop": 10, "count": 11,
             "series": [{"rho": 0.1}, {"rho": 0.2}, {"rho": 0.3},
                        {"rho": 0.1, "energy": 2.0}, {"rho": 0.2, "energy": 2.0},
                        {"rho": 0.3, "energy": 2.0}]},
    "fig2a": _sse_preset(0.2, -1.0),
    "fig2b": _sse_preset(2.0, -1.0),
    "fig3": _sse_preset(0.0, -3.0),
    "fig4a": _sse_preset(-2.0, 0.0),
    "fig4b": _sse_preset(3.0, 0.0),
}
MASS_CONVENTIONS = {"equal": EQUAL_MASS_CONVENTION, "unequal": UNEQUAL_MASS_CONVENTION}


@dataclass
class ScanSpec:
    model: str
    sweep_variable: str
    range: tuple
    fixed: dict
    preset: Optional[str] = None
    series: list = field(default_factory=lambda: [{}])
    allow_complex_exponent: bool = False
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.model not in ("dkp", "sse"):
            raise ValueError(f"model must be dkp or sse, got {self.model!r}")
        if self.sweep_variable not in SWEEP_PARAM:
            raise ValueError(f"unknown sweep variable {self.sweep_variable!r}")
        if (self.model, self.sweep_variable) in (("dkp", "l"), ("sse", "J")):
            raise ValueError(f"{self.model} channels are labelled by "
                             f"{'J' if self.model == 'dkp' else 'l'}, not {self.sweep_variable}")
        start, stop, count = self.range
        if not (count >= 2 and start < stop):
            raise ValueError(f"need count >= 2 and start < stop, got {self.range}")

    def values(self) -> list:
        start, stop, count = self.range
        vals = np.linspace(start, stop, int(count))
        if self.sweep_variable in INTEGER_SWEEPS:
            ints = np.rint(vals)
            if np.any(np.abs(vals - ints) > 1e-9) or ints[0] < 0:
                raise ValueError(f"{self.sweep_variable} sweep {self.range} does not hit integers")
            return [int(v) for v in ints]
        return [float(v) for v in vals]


def spec_from_params(params: dict) -> ScanSpec:
    """Build a ScanSpec from a merged parameter map; a preset fills the gaps."""
    params = {k: v for k, v in params.items() if v is not None}
    preset = params.get("preset")
    base = {}
    notes = []
    if preset is not None:
        if preset not in PRESETS:
            raise ValueError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        base = {k: v for k, v in PRESETS[preset].items()}
        if base["model"] == "sse":
            conv = params.get("mass_convention", "equal")
            if conv not in MASS_CONVENTIONS:
                raise ValueError(f"mass convention must be equal or unequal, got {conv!r}")
            mu, s = MASS_CONVENTIONS[conv]
            base.update(m1=1.0, m2=1.0, mu_override=mu, mass_index_override=s,
                        allow_complex_exponent=True)
            notes.append(f"mass convention: {conv} (mu={mu:g}, (mu/eta)^3={s:g}), "
                         "fixed directly rather than derived from m1, m2")
        else:
            base["allow_complex_exponent"] = True
            notes.append("series with energy=2 are a companion sweep; the caption's "
                         "E=m=1 gives k^2 < 0 for every J")
    merged = dict(base)
    series = merged.pop("series", [{}])
    explicit = {k: v for k, v in params.items() if k not in ("preset", "mass_convention")}
    merged.update(explicit)
    # explicit values override series entries too; drop duplicates that result
    cleaned = []
    for entry in series:
        entry = {k: v for k, v in entry.items() if k not in explicit}
        if entry not in cleaned:
            cleaned.append(entry)
    for key in ("model", "sweep", "start", "stop", "count"):
        if key not in merged:
            raise ValueError(f"missing required parameter {key!r}")
    fixed = {k: merged[k] for k in ("a", "b", "rho", "energy", "mass", "m1", "m2", "J", "l",
                                     "mu_override", "mass_index_override") if k in merged}
    return ScanSpec(model=merged["model"], sweep_variable=merged["sweep"],
                    range=(merged["start"], merged["stop"], merged["count"]), fixed=fixed,
                    preset=preset, series=cleaned,
                    allow_complex_exponent=bool(merged.get("allow_complex_exponent", False)),
                    notes=notes)


def build_channel(model: str, p: dict):
    """Channel object from a flat parameter map."""
    pot = HellmannPotential(float(p["a"]), float(p["b"]), float(p["rho"]))
    if model == "dkp":
        return DkpChannel(int(p.get("J", 0)), float(p["energy"]), float(p["mass"]), pot)
    override = None
    if p.get("mu_override") is not None or p.get("mass_index_override") is not None:
        if p.get("mu_override") is None or p.get("mass_index_override") is None:
            raise ValueError("mu_override and mass_index_override go together")
        override = (float(p["mu_override"]), float(p["mass_index_override"]))
    return SseChannel(int(p.get("l", 0)), float(p["energy"]), float(p["m1"]), float(p["m2"]),
                      pot, mass_override=override)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return f"{x:.17g}"


def evaluate_point(model: str, sweep_var: str, sweep_value, params: dict,
                   allow_complex_exponent: bool) -> dict:
    """One CSV row. Per-point failures become gap rows instead of raising."""
    p = dict(params)
    p[SWEEP_PARAM[sweep_var]] = sweep_value
    ch = build_channel(model, p)
    row = dict.fromkeys(CSV_FIELDS)
    row.update(model=model, sweep_var=sweep_var, sweep_value=sweep_value,
               a=ch.potential.a, b=ch.potential.b, rho=ch.potential.rho, energy=ch.energy,
               identity_ok=False, evanescent=False)
    if model == "dkp":
        row["m_or_m1"] = ch.mass
        phase_fn, k_fn = dkp_phase_shift, dkp_wave_number
    else:
        row.update(m_or_m1=ch.m1, m2=ch.m2, mu=ch.mu, mass_index_cubed=ch.mass_index_cubed)
        phase_fn, k_fn = sse_phase_shift, sse_wave_number
    try:
        res = phase_fn(ch, allow_complex_exponent)
    except EvanescentChannel:
        row["evanescent"] = True
        return row
    except ComplexExponent:
        row["k"] = k_fn(ch)
        return row
    except HellmannError:
        return row
    row.update(k=res.k, delta_rad=res.delta, T=res.transition, sigma_partial=res.partial_sigma,
               identity_ok=res.identity_ok)
    return row


def run_scan(spec: ScanSpec, jobs: int = 1) -> list[dict]:
    """Evaluate every (series, sweep value) point; rows come back in sweep order."""
    points = []
    for entry in spec.series:
        params = dict(spec.fixed)
        params.update(entry)
        for v in spec.values():
            points.append((params, v))

    def work(pt):
        params, v = pt
        return evaluate_point(spec.model, spec.sweep_variable, v, params,
                              spec.allow_complex_exponent)

    return ordered_map(work, points, jobs)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([_fmt(row[f]) if f not in ("model", "sweep_var") else row[f]
                         for f in CSV_FIELDS])
    return buf.getvalue()


def parse_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def parse_sidecar(text: str) -> dict:
    """Fixed channel parameters recorded in a sidecar's ``# fixed`` line."""
    for line in text.splitlines():
        if line.startswith("# fixed "):
            out = {}
            for item in line[len("# fixed "):].split():
                key, raw = item.split("=", 1)
                out[key] = int(raw) if key in INTEGER_SWEEPS else float(raw)
            return out
    return {}


def regenerate_row(record: dict, fixed: Optional[dict] = None) -> dict:
    """Recompute a row from a parsed CSV record (round-trip check).

    The CSV has no J or l column, so for sweeps over E, rho, a or b the
    angular momentum comes from ``fixed`` (see ``parse_sidecar``).
    """
    model, var = record["model"], record["sweep_var"]
    p = {"a": float(record["a"]), "b": float(record["b"]), "rho": float(record["rho"]),
         "energy": float(record["energy"])}
    for key in INTEGER_SWEEPS:
        if fixed and key in fixed:
            p[key] = fixed[key]
    if model == "dkp":
        p["mass"] = float(record["m_or_m1"])
    else:
        p.update(m1=float(record["m_or_m1"]), m2=float(record["m2"]),
                 mu_override=float(record["mu"]),
                 mass_index_override=float(record["mass_index_cubed"]))
    raw = record["sweep_value"]
    value = int(raw) if var in INTEGER_SWEEPS else float(raw)
    allow = record["delta_rad"] != "" or record["evanescent"] == "true"
    return evaluate_point(model, var, value, p, allow)


def trend_report(spec: ScanSpec, rows: list[dict], l_cut: int = 5) -> list[str]:
    """Whether T decays over the propagating partial waves below ``l_cut``, per series.

    Reported, never asserted.
    """
    if spec.sweep_variable not in INTEGER_SWEEPS:
        return []
    out = []
    n_vals = len(spec.values())
    for i, entry in enumerate(spec.series):
        chunk = rows[i * n_vals:(i + 1) * n_vals]
        pts = [(r["sweep_value"], r["T"]) for r in chunk
               if r["T"] is not None and r["sweep_value"] < l_cut]
        gaps = sum(1 for r in chunk if r["T"] is None)
        label = ", ".join(f"{k}={v:g}" for k, v in entry.items()) or "base"
        if len(pts) < 2:
            verdict = "undetermined"
        else:
            ts = [t for _, t in pts]
            verdict = "holds" if all(x > y for x, y in zip(ts, ts[1:])) else "does not hold"
        out.append(f"decay of T for {spec.sweep_variable} < {l_cut} [{label}]: {verdict} "
                   f"({len(pts)} propagating points below the cut, {gaps} gap rows in the sweep)")
    return out


def sidecar_text(spec: ScanSpec, rows: list[dict]) -> str:
    lines = [f"# hellmann {__version__}",
             f"# model={spec.model} sweep={spec.sweep_variable} range={spec.range}",
             f"# preset={spec.preset or 'none'} allow_complex_exponent={spec.allow_complex_exponent}"]
    lines.append("# fixed " + " ".join(f"{k}={_fmt(v)}" for k, v in sorted(spec.fixed.items())))
    for entry in spec.series:
        lines.append("# series " + (", ".join(f"{k}={v:g}" for k, v in entry.items()) or "base"))
    lines += [f"# note: {n}" for n in spec.notes]
    lines.append(f"# rows={len(rows)} gaps={sum(1 for r in rows if r['T'] is None)}")
    lines += [f"# trend: {t}" for t in trend_report(spec, rows)]
    return "\n".join(lines) + "\n"


def gnuplot_script(spec: ScanSpec, csv_name: str) -> str:
    col = {f: i + 1 for i, f in enumerate(CSV_FIELDS)}
    clauses = []
    for entry in spec.series:
        conds = []
        for key, value in entry.items():
            name = {"energy": "energy", "rho": "rho", "a": "a", "b": "b"}.get(key)
            if name is not None:
                conds.append(f"abs(${col[name]}-{value:.17g})<1e-12")
        cond = " && ".join(conds) or "1"
        title = ", ".join(f"{k}={v:g}" for k, v in entry.items()) or spec.model
        clauses.append(f"'{csv_name}' every ::1 using (({cond}) ? ${col['sweep_value']} : 1/0)"
                       f":{col['T']} with linespoints title '{title}'")
    return "\n".join([
        "set datafile separator ','",
        "set datafile missing ''",
        f"set xlabel '{spec.sweep_variable}'",
        "set ylabel 'T = 4 sin^2(delta)'",
        f"set title '{spec.model.upper()} partial-wave transitions"
        f"{' (' + spec.preset + ')' if spec.preset else ''}'",
        "plot " + ", \\\n     ".join(clauses),
        "",
    ])


def write_scan(spec: ScanSpec, rows: list[dict], out: Path) -> tuple[Path, Path, Path]:
    """Write CSV, '#'-prefixed metadata sidecar and a gnuplot script next to it."""
    out = Path(out)
    meta = out.with_name(out.name + ".meta")
    script = out.with_suffix(".gp")
    out.write_text(rows_to_csv(rows), encoding="utf-8", newline="\n")
    meta.write_text(sidecar_text(spec, rows), encoding="utf-8", newline="\n")
    script.write_text(gnuplot_script(spec, out.name), encoding="utf-8", newline="\n")
    return out, meta, script
