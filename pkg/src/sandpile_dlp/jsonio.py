"""JSON encodings of graphs, rationals, configurations, groups and DLP data.

Big integers are written as decimal strings, rationals as ``"p/q"``.
"""

from __future__ import annotations

from fractions import Fraction

from sandpile_dlp.dlp import DlpInstance, DlpSolution
from sandpile_dlp.exactmath.numtheory import ResidueClass
from sandpile_dlp.graphs import Graph, graph_from_family
from sandpile_dlp.sandpile import Configuration, GroupDescription, divisor_to_config


class SchemaError(ValueError):
    pass


def rational_to_json(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rational_from_json(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise SchemaError(f"rational must be a 'p/q' string, got {text!r}")
    return Fraction(text)


def matrix_to_json(M) -> list[list[str]]:
    return [[rational_to_json(x) for x in row] for row in M]


def matrix_from_json(rows) -> list[list[Fraction]]:
    return [[rational_from_json(x) for x in row] for row in rows]


def graph_to_json(g: Graph) -> dict:
    if g.family is not None:
        params = list(g.params) if g.family == "banana" else g.params[0]
        return {"family": g.family, "params": params, "sink": g.sink}
    return {
        "vertices": g.vertex_count,
        "edges": [[u, v, m] for u, v, m in g.edges],
        "sink": g.sink,
    }


def graph_from_json(obj) -> Graph:
    if not isinstance(obj, dict):
        raise SchemaError("graph must be a JSON object")
    sink = obj.get("sink")
    if "family" in obj:
        if "params" not in obj:
            raise SchemaError("family graph needs 'params'")
        return graph_from_family(obj["family"], obj["params"], sink)
    if "vertices" in obj and "edges" in obj:
        edges = obj["edges"]
        if not all(isinstance(e, list) and len(e) in (2, 3) for e in edges):
            raise SchemaError("edges must be [u, v] or [u, v, multiplicity] lists")
        return Graph.from_edges(int(obj["vertices"]), edges, 0 if sink is None else int(sink))
    raise SchemaError("graph needs either 'family'/'params' or 'vertices'/'edges'")


def configuration_to_json(c: Configuration) -> dict:
    return {"values": list(c.values), "sink": c.sink}


def configuration_from_json(obj, g: Graph) -> Configuration:
    """Accept ``{"values": [...], "sink": k}`` or a bare array.

    A bare array of length ``|V|`` is read as a divisor, of length ``|V|-1``
    as a configuration.
    """
    if isinstance(obj, dict):
        if "sink" in obj and int(obj["sink"]) != g.sink:
            raise SchemaError(f"sink {obj['sink']} does not match graph sink {g.sink}")
        obj = obj.get("values")
    if not isinstance(obj, list) or not all(isinstance(x, int) for x in obj):
        raise SchemaError("configuration must be an integer array")
    if len(obj) == g.vertex_count:
        return divisor_to_config(obj, g)
    return Configuration(g, tuple(obj))


def group_to_json(desc: GroupDescription) -> dict:
    return {
        "factors": [str(d) for d in desc.invariant_factors],
        "order": str(desc.order),
        "generators": [list(d) for d in desc.generators],
    }


def group_from_json(obj) -> GroupDescription:
    return GroupDescription(
        tuple(int(d) for d in obj["factors"]),
        tuple(tuple(d) for d in obj["generators"]),
        int(obj["order"]),
    )


def instance_to_json(inst: DlpInstance) -> dict:
    from sandpile_dlp.sandpile import config_to_divisor

    out = {
        "graph": graph_to_json(inst.graph),
        "c1": list(config_to_divisor(inst.base)),
        "c2": list(config_to_divisor(inst.target)),
    }
    if inst.generators is not None:
        out["generators"] = [list(d) for d in inst.generators]
    return out


def instance_from_json(obj, sink: int | None = None) -> DlpInstance:
    if not isinstance(obj, dict):
        raise SchemaError("instance must be a JSON object")
    for key in ("graph", "c1", "c2"):
        if key not in obj:
            raise SchemaError(f"instance is missing {key!r}")
    graph_obj = dict(obj["graph"])
    if sink is not None:
        graph_obj["sink"] = sink
    g = graph_from_json(graph_obj)
    gens = obj.get("generators")
    if gens is not None:
        if not all(isinstance(d, list) and len(d) == g.vertex_count for d in gens):
            raise SchemaError(f"generators must be divisors with {g.vertex_count} entries")
    return DlpInstance(
        g,
        configuration_from_json(obj["c1"], g),
        configuration_from_json(obj["c2"], g),
        None if gens is None else tuple(tuple(d) for d in gens),
    )


def solution_to_json(sol: DlpSolution, elapsed_ms: int | None = None) -> dict:
    out = {
        "x": str(sol.x),
        "residue": str(sol.residue_class.residue),
        "modulus": str(sol.residue_class.modulus),
        "verified": sol.verified,
        "method": sol.method,
    }
    if sol.pairings:
        out["pairings"] = [[rational_to_json(a), rational_to_json(b)] for a, b in sol.pairings]
    if elapsed_ms is not None:
        out["elapsed_ms"] = elapsed_ms
    return out


def solution_from_json(obj) -> DlpSolution:
    pairings = tuple(
        (rational_from_json(a), rational_from_json(b)) for a, b in obj.get("pairings", [])
    )
    return DlpSolution(
        ResidueClass(int(obj["residue"]), int(obj["modulus"])),
        bool(obj["verified"]),
        obj["method"],
        int(obj["x"]),
        pairings,
    )
