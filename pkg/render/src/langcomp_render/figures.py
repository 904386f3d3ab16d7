"""The four figure types and the bundle renderer."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureSpec", "RenderError", "render_figure", "render_bundle"]

FIGURE_TYPES = ("portrait", "timeseries", "locus", "basin")

BASIN_COLORS = {
    "E1": "tab:purple", "E2": "tab:brown", "E3": "tab:blue",
    "E4": "tab:orange", "E5": "tab:olive", "E6": "tab:green",
    "E7": "tab:red", "none": "0.8",
}


class RenderError(ValueError):
    """Bad spec or malformed/empty input data."""


@dataclass
class FigureSpec:
    """One figure: a type, its input files, and the output image path."""

    type: str
    inputs: dict
    output: str
    title: str | None = None
    consumed: list = field(default_factory=list)

    @classmethod
    def from_json(cls, path: str) -> "FigureSpec":
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise RenderError(f"unreadable spec {path}: {exc}") from exc
        for key in ("type", "inputs", "output"):
            if key not in raw:
                raise RenderError(f"spec {path} missing {key!r}")
        if raw["type"] not in FIGURE_TYPES:
            raise RenderError(
                f"unknown figure type {raw['type']!r}; expected one of {FIGURE_TYPES}"
            )
        return cls(type=raw["type"], inputs=dict(raw["inputs"]),
                   output=raw["output"], title=raw.get("title"))


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _read_table(spec: FigureSpec, path: str, header: str, text_cols=()):
    """CSV with an exact expected header; numeric except ``text_cols``."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [line.strip() for line in fh if line.strip()]
    except OSError as exc:
        raise RenderError(f"cannot read {path}: {exc}") from exc
    if not lines:
        raise RenderError(f"{path} is empty")
    if lines[0] != header:
        raise RenderError(f"{path}: expected header {header!r}, got {lines[0]!r}")
    if len(lines) == 1:
        raise RenderError(f"{path} has a header but no rows")
    names = header.split(",")
    columns = {name: [] for name in names}
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(names):
            raise RenderError(f"{path}:{lineno}: expected {len(names)} fields")
        for name, part in zip(names, parts):
            if name in text_cols:
                columns[name].append(part)
            else:
                try:
                    columns[name].append(float(part))
                except ValueError:
                    raise RenderError(
                        f"{path}:{lineno}: {part!r} is not a number"
                    ) from None
    spec.consumed.append(path)
    return {
        name: (vals if name in text_cols else np.asarray(vals))
        for name, vals in columns.items()
    }


def _read_equilibria(spec: FigureSpec, path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            points = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise RenderError(f"cannot read equilibria {path}: {exc}") from exc
    for entry in points:
        if "kind" not in entry or "coords" not in entry:
            raise RenderError(f"{path}: equilibria entries need kind and coords")
    spec.consumed.append(path)
    return points


def _require(spec: FigureSpec, key: str) -> str:
    try:
        return spec.inputs[key]
    except KeyError:
        raise RenderError(f"{spec.type} figure needs inputs[{key!r}]") from None


def _draw_simplex_frame(ax):
    ax.plot([0, 1], [1, 0], lw=0.8, color="0.6")
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(-0.02, 1.02)
    ax.set_aspect("equal")
    ax.set_xlabel("m1")
    ax.set_ylabel("m2")


def _draw_equilibria(ax, points):
    for e in points:
        x, y = e["coords"]["m1"], e["coords"]["m2"]
        stable = e.get("stability") == "stable"
        ax.plot(x, y, marker="o", ms=6,
                mfc="black" if stable else "white", mec="black", zorder=5)
        ax.annotate(e["kind"], (x, y), textcoords="offset points",
                    xytext=(5, 5), fontsize=8)


def _draw_portrait(spec: FigureSpec, ax):
    grid = _read_table(spec, _require(spec, "portrait"), "m1,m2,dm1,dm2")
    speed = np.hypot(grid["dm1"], grid["dm2"])
    nonzero = speed > 0
    u = np.where(nonzero, grid["dm1"] / np.where(nonzero, speed, 1.0), 0.0)
    v = np.where(nonzero, grid["dm2"] / np.where(nonzero, speed, 1.0), 0.0)
    ax.quiver(grid["m1"], grid["m2"], u, v, speed, angles="xy", width=0.003,
              scale=35, cmap="Greys", alpha=0.8)
    for key in ("trajectory", "trajectories"):
        if key not in spec.inputs:
            continue
        paths = spec.inputs[key]
        for path in [paths] if isinstance(paths, str) else paths:
            t = _read_table(spec, path, "t,m1,m2,b")
            ax.plot(t["m1"], t["m2"], lw=1.5)
            ax.plot(t["m1"][0], t["m2"][0], marker="x", color="k", ms=6)
    if "equilibria" in spec.inputs:
        _draw_equilibria(ax, _read_equilibria(spec, spec.inputs["equilibria"]))
    _draw_simplex_frame(ax)


def _draw_timeseries(spec: FigureSpec, ax):
    data = _read_table(spec, _require(spec, "trajectory"), "t,m1,m2,b")
    for name, style in (("m1", "-"), ("m2", "--"), ("b", "-.")):
        ax.plot(data["t"], data[name], style, label=name)
    ax.set_xlabel("t")
    ax.set_ylabel("population fraction")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()


def _draw_locus(spec: FigureSpec, ax):
    data = _read_table(spec, _require(spec, "locus"), "s_b,m1,m2,b")
    for name, style in (("m1", "-"), ("m2", "--"), ("b", "-.")):
        ax.plot(data["s_b"], data[name], style, marker="o", ms=3, label=name)
    ax.set_xlabel("s_b")
    ax.set_ylabel("equilibrium fraction")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()


def _draw_basin(spec: FigureSpec, ax):
    data = _read_table(spec, _require(spec, "basin"), "m1,m2,label",
                       text_cols=("label",))
    labels = sorted(set(data["label"]))
    for label in labels:
        xs = [x for x, lab in zip(data["m1"], data["label"]) if lab == label]
        ys = [y for y, lab in zip(data["m2"], data["label"]) if lab == label]
        ax.scatter(xs, ys, s=90, marker="s",
                   color=BASIN_COLORS.get(label, "0.5"), label=label)
    if "equilibria" in spec.inputs:
        _draw_equilibria(ax, _read_equilibria(spec, spec.inputs["equilibria"]))
    _draw_simplex_frame(ax)
    ax.legend(loc="upper right", fontsize=8)


_DRAWERS = {
    "portrait": _draw_portrait,
    "timeseries": _draw_timeseries,
    "locus": _draw_locus,
    "basin": _draw_basin,
}


def render_figure(spec: FigureSpec) -> str:
    """Render one figure; returns the output path.

    All inputs are parsed and validated before the image file is
    created, so a data error never leaves an image behind.
    """
    fig, ax = plt.subplots(figsize=(6, 5))
    try:
        _DRAWERS[spec.type](spec, ax)
        if spec.title:
            ax.set_title(spec.title)
        directory = os.path.dirname(os.path.abspath(spec.output))
        os.makedirs(directory, exist_ok=True)
        fig.savefig(spec.output, dpi=150)
    finally:
        plt.close(fig)
    return spec.output


def write_manifest(outdir: str, consumed) -> str:
    """Record the SHA-256 of every consumed data file."""
    manifest = {
        os.path.basename(path): _sha256(path) for path in sorted(set(consumed))
    }
    path = os.path.join(outdir, "render_manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _bundle_specs(bundle: str, outdir: str):
    """Derive figure specs from a bundle directory's file conventions."""
    names = sorted(os.listdir(bundle))

    def here(name):
        return os.path.join(bundle, name)

    def out(name):
        return os.path.join(outdir, name)

    specs = []
    for name in names:
        stem, ext = os.path.splitext(name)
        if ext == ".csv" and stem.startswith("trajectory"):
            suffix = stem[len("trajectory"):]
            specs.append(FigureSpec("timeseries", {"trajectory": here(name)},
                                    out(f"timeseries{suffix}.png")))
        elif ext == ".csv" and stem.startswith("portrait"):
            suffix = stem[len("portrait"):]
            inputs = {"portrait": here(name)}
            if f"trajectory{suffix}.csv" in names:
                inputs["trajectory"] = here(f"trajectory{suffix}.csv")
            if f"equilibria{suffix}.json" in names:
                inputs["equilibria"] = here(f"equilibria{suffix}.json")
            specs.append(FigureSpec("portrait", inputs, out(f"portrait{suffix}.png")))
        elif ext == ".csv" and stem.startswith("basin"):
            suffix = stem[len("basin"):]
            inputs = {"basin": here(name)}
            if f"equilibria{suffix}.json" in names:
                inputs["equilibria"] = here(f"equilibria{suffix}.json")
            specs.append(FigureSpec("basin", inputs, out(f"{stem}.png")))
        elif name == "locus.csv":
            specs.append(FigureSpec("locus", {"locus": here(name)}, out("locus.png")))
    if not specs:
        raise RenderError(f"no renderable data files in {bundle}")
    return specs


def render_bundle(bundle: str, outdir: str | None = None) -> list[str]:
    """Render every figure a bundle's files call for; returns image paths."""
    if not os.path.isdir(bundle):
        raise RenderError(f"bundle directory {bundle!r} does not exist")
    outdir = outdir or bundle
    os.makedirs(outdir, exist_ok=True)
    images = []
    consumed = []
    for spec in _bundle_specs(bundle, outdir):
        images.append(render_figure(spec))
        consumed.extend(spec.consumed)
    write_manifest(outdir, consumed)
    return images
