"""Structured text format for problem instances.

Key-value sections with typed arrays, e.g.::

    [function]
    variant = weighted_additive_quadratic
    weights = 12.5 3.25
    cost = 0.2

    [matroid]
    variant = uniform
    n = 2
    rank = 1

    [noise]
    distribution = gaussian
    sigma2 = 0.1
    clamp_negative = false

Integer fields round-trip bit-exactly; reals are written with repr, which
preserves the shortest 17-significant-digit form and round-trips exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .matroids import (ContractedMatroid, Matroid, PartitionMatroid,
                       UniformMatroid)
from .noise import (BoundedUniform, Gaussian, NoiseSpec, ShiftedExponential)
from .sets import GroundSet, mask_members
from .setfn import (Coverage, CutFunction, Modular, SetFunctionSpec,
                    WeightedAdditiveQuadratic)


@dataclass
class Instance:
    function: SetFunctionSpec | None = None
    matroid: Matroid | None = None
    noise: NoiseSpec | None = None
    master_seed: int | None = None


def _fmt_real(x: float) -> str:
    return repr(float(x))


def _fmt_reals(xs) -> str:
    return " ".join(_fmt_real(x) for x in xs)


def _fmt_ints(xs) -> str:
    return " ".join(str(int(x)) for x in xs)


def _function_lines(spec: SetFunctionSpec) -> list[str]:
    if isinstance(spec, WeightedAdditiveQuadratic):
        return [
            "variant = weighted_additive_quadratic",
            f"weights = {_fmt_reals(spec.weights)}",
            f"cost = {_fmt_real(spec.cost)}",
        ]
    if isinstance(spec, Modular):
        return ["variant = modular", f"weights = {_fmt_reals(spec.weights)}"]
    if isinstance(spec, Coverage):
        covers = " | ".join(_fmt_ints(mask_members(c)) for c in spec.covers)
        return [
            "variant = coverage",
            f"covers = {covers}",
            f"item_weights = {_fmt_reals(spec.item_weights)}",
        ]
    if isinstance(spec, CutFunction):
        edges = " ".join(f"{u}-{v}:{_fmt_real(w)}" for u, v, w in spec.edges)
        return ["variant = cut", f"n = {spec.n_vertices}", f"edges = {edges}"]
    raise TypeError(f"unknown set function spec: {type(spec)!r}")


def _matroid_lines(m: Matroid, prefix: str = "") -> list[str]:
    if isinstance(m, UniformMatroid):
        return [f"{prefix}variant = uniform", f"{prefix}n = {m.ground.n}",
                f"{prefix}rank = {m.r}"]
    if isinstance(m, PartitionMatroid):
        parts = " | ".join(_fmt_ints(mask_members(p)) for p in m.parts)
        return [f"{prefix}variant = partition", f"{prefix}n = {m.ground.n}",
                f"{prefix}parts = {parts}", f"{prefix}caps = {_fmt_ints(m.caps)}"]
    if isinstance(m, ContractedMatroid):
        lines = [f"{prefix}variant = contracted",
                 f"{prefix}pinned = {_fmt_ints(m.pinned.members())}"]
        lines += _matroid_lines(m.base, prefix=prefix + "base_")
        return lines
    raise TypeError(f"unknown matroid: {type(m)!r}")


def _noise_lines(spec: NoiseSpec) -> list[str]:
    d = spec.distribution
    if isinstance(d, Gaussian):
        lines = ["distribution = gaussian", f"sigma2 = {_fmt_real(d.sigma2)}"]
    elif isinstance(d, BoundedUniform):
        lines = ["distribution = bounded_uniform", f"halfwidth = {_fmt_real(d.halfwidth)}"]
    elif isinstance(d, ShiftedExponential):
        lines = ["distribution = shifted_exponential", f"rate = {_fmt_real(d.rate)}"]
    else:
        raise TypeError(f"unknown noise distribution: {type(d)!r}")
    lines.append(f"clamp_negative = {'true' if spec.clamp_negative else 'false'}")
    return lines


def dumps_instance(inst: Instance) -> str:
    blocks = []
    if inst.function is not None:
        blocks.append("[function]\n" + "\n".join(_function_lines(inst.function)))
    if inst.matroid is not None:
        blocks.append("[matroid]\n" + "\n".join(_matroid_lines(inst.matroid)))
    if inst.noise is not None:
        blocks.append("[noise]\n" + "\n".join(_noise_lines(inst.noise)))
    if inst.master_seed is not None:
        blocks.append(f"[seed]\nmaster_seed = {inst.master_seed}")
    return "\n\n".join(blocks) + "\n"


def _parse_sections(text: str) -> dict[str, dict[str, str]]:
    sections: dict[str, dict[str, str]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections[current] = {}
            continue
        if current is None or "=" not in line:
            raise ValueError(f"malformed instance line: {raw!r}")
        key, _, value = line.partition("=")
        sections[current][key.strip()] = value.strip()
    return sections


def _ids_to_mask(text: str) -> int:
    mask = 0
    for tok in text.split():
        mask |= 1 << int(tok)
    return mask


def _parse_function(kv: dict[str, str]) -> SetFunctionSpec:
    variant = kv["variant"]
    if variant == "weighted_additive_quadratic":
        return WeightedAdditiveQuadratic(
            weights=tuple(float(x) for x in kv["weights"].split()),
            cost=float(kv["cost"]))
    if variant == "modular":
        return Modular(weights=tuple(float(x) for x in kv["weights"].split()))
    if variant == "coverage":
        covers = tuple(_ids_to_mask(part) for part in kv["covers"].split("|"))
        return Coverage(covers=covers,
                        item_weights=tuple(float(x) for x in kv["item_weights"].split()))
    if variant == "cut":
        edges = []
        for tok in kv.get("edges", "").split():
            uv, _, w = tok.partition(":")
            u, _, v = uv.partition("-")
            edges.append((int(u), int(v), float(w)))
        return CutFunction(n_vertices=int(kv["n"]), edges=tuple(edges))
    raise ValueError(f"unknown function variant: {variant!r}")


def _parse_matroid(kv: dict[str, str], prefix: str = "") -> Matroid:
    variant = kv[prefix + "variant"]
    if variant == "uniform":
        ground = GroundSet(int(kv[prefix + "n"]))
        return UniformMatroid(ground, int(kv[prefix + "rank"]))
    if variant == "partition":
        ground = GroundSet(int(kv[prefix + "n"]))
        parts = tuple(_ids_to_mask(part) for part in kv[prefix + "parts"].split("|"))
        caps = tuple(int(x) for x in kv[prefix + "caps"].split())
        return PartitionMatroid(ground, parts, caps)
    if variant == "contracted":
        base = _parse_matroid(kv, prefix=prefix + "base_")
        from .sets import ElementSet
        pinned = ElementSet(base.ground, _ids_to_mask(kv[prefix + "pinned"]))
        return ContractedMatroid(base, pinned)
    raise ValueError(f"unknown matroid variant: {variant!r}")


def _parse_noise(kv: dict[str, str]) -> NoiseSpec:
    dist = kv["distribution"]
    if dist == "gaussian":
        d = Gaussian(sigma2=float(kv["sigma2"]))
    elif dist == "bounded_uniform":
        d = BoundedUniform(halfwidth=float(kv["halfwidth"]))
    elif dist == "shifted_exponential":
        d = ShiftedExponential(rate=float(kv["rate"]))
    else:
        raise ValueError(f"unknown noise distribution: {dist!r}")
    clamp = kv.get("clamp_negative", "false").lower() == "true"
    return NoiseSpec(distribution=d, clamp_negative=clamp)


def loads_instance(text: str) -> Instance:
    sections = _parse_sections(text)
    inst = Instance()
    if "function" in sections:
        inst.function = _parse_function(sections["function"])
    if "matroid" in sections:
        inst.matroid = _parse_matroid(sections["matroid"])
    if "noise" in sections:
        inst.noise = _parse_noise(sections["noise"])
    if "seed" in sections:
        inst.master_seed = int(sections["seed"]["master_seed"])
    return inst


def load_instance(path) -> Instance:
    with open(path) as fh:
        return loads_instance(fh.read())


def save_instance(path, inst: Instance):
    with open(path, "w") as fh:
        fh.write(dumps_instance(inst))
