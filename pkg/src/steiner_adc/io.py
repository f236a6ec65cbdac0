"""JSON and DOT formats for based ADCs and for command outputs."""
from __future__ import annotations

import json

import jsonschema
import networkx as nx

from .core import BasedADC, CoefficientOverflow, StructureError
from .steiner_check import generating_edges


class ParseError(ValueError):
    """Input that is not a well-formed complex; ``where`` names the field or label."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


_TERM = {
    "type": "object",
    "required": ["coef", "to"],
    "additionalProperties": False,
    "properties": {"coef": {"type": "integer"}, "to": {"type": "string"}},
}

ADC_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "AdcJson",
    "type": "object",
    "required": ["name", "max_degree", "basis", "differential", "augmentation", "bipointing"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "max_degree": {"type": "integer", "minimum": 0},
        "basis": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "degree"],
                "additionalProperties": False,
                "properties": {"label": {"type": "string"},
                               "degree": {"type": "integer", "minimum": 0}},
            },
        },
        "differential": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "terms"],
                "additionalProperties": False,
                "properties": {"from": {"type": "string"},
                               "terms": {"type": "array", "items": _TERM}},
            },
        },
        "augmentation": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "coef"],
                "additionalProperties": False,
                "properties": {"from": {"type": "string"}, "coef": {"type": "integer"}},
            },
        },
        "bipointing": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "required": ["source", "sink"], "additionalProperties": False,
                 "properties": {"source": {"type": "string"}, "sink": {"type": "string"}}},
            ],
        },
    },
}

CHECK_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CheckReport",
    "type": "object",
    "required": ["complex_ok", "unital", "loop_free", "total_order", "strong_steiner"],
    "properties": {
        "complex_ok": {"type": "boolean"},
        "unital": {"type": "boolean"},
        "loop_free": {"type": "boolean"},
        "total_order": {"type": ["boolean", "null"]},
        "strong_steiner": {"type": "boolean"},
        "violations": {"type": "array", "items": {"type": "string"}},
        "loop_witness": {"type": ["array", "null"], "items": {"type": "string"}},
    },
}

NERVE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "NerveCounts",
    "type": "object",
    "required": ["counts", "truncated", "cap"],
    "properties": {
        "counts": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "truncated": {"type": "boolean"},
        "cap": {"type": "integer", "minimum": 0},
        "cells": {"type": "array"},
    },
}

SUITE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SuiteReport",
    "type": "object",
    "required": ["suite", "params", "status", "elapsed", "checks"],
    "properties": {
        "suite": {"type": "string"},
        "params": {"type": "object"},
        "status": {"enum": ["pass", "fail", "inconclusive"]},
        "elapsed": {"type": "number"},
        "checks": {
            "type": "array",
            "items": {"type": "object", "required": ["name", "ok"],
                      "properties": {"name": {"type": "string"}, "ok": {"type": "boolean"}}},
        },
    },
}


def adc_to_dict(A: BasedADC) -> dict:
    diff = []
    for e in A.basis:
        if e.degree > 0:
            diff.append({"from": e.label,
                         "terms": [{"coef": c, "to": t}
                                   for t, c in A.ordered_terms(A.differential[e.label])]})
    return {
        "name": A.name,
        "max_degree": A.max_degree,
        "basis": [{"label": e.label, "degree": e.degree} for e in A.basis],
        "differential": diff,
        "augmentation": [{"from": x, "coef": A.augmentation[x]} for x in A.labels(0)],
        "bipointing": ({"source": A.bipointing[0], "sink": A.bipointing[1]}
                       if A.bipointing else None),
    }


def serialize_adc(A: BasedADC) -> str:
    return json.dumps(adc_to_dict(A), indent=2, ensure_ascii=False) + "\n"


def _where(err: jsonschema.ValidationError) -> str:
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def adc_from_dict(data) -> BasedADC:
    try:
        jsonschema.validate(data, ADC_SCHEMA)
    except jsonschema.ValidationError as err:
        raise ParseError(f"schema violation at {_where(err)}: {err.message}", _where(err)) from None
    labels = {}
    for i, b in enumerate(data["basis"]):
        if b["label"] in labels:
            raise ParseError(f"duplicate basis label {b['label']!r}", b["label"])
        labels[b["label"]] = b["degree"]
    diff = {}
    for entry in data["differential"]:
        src = entry["from"]
        if src not in labels:
            raise ParseError(f"differential given for unknown label {src!r}", src)
        if src in diff:
            raise ParseError(f"differential of {src!r} given twice", src)
        terms = {}
        for t in entry["terms"]:
            if t["to"] not in labels:
                raise ParseError(f"differential of {src!r} mentions unknown label {t['to']!r}",
                                 t["to"])
            terms[t["to"]] = terms.get(t["to"], 0) + t["coef"]
        diff[src] = terms
    aug = {}
    for entry in data["augmentation"]:
        if entry["from"] not in labels:
            raise ParseError(f"augmentation given for unknown label {entry['from']!r}",
                             entry["from"])
        aug[entry["from"]] = entry["coef"]
    bip = data["bipointing"]
    bip = (bip["source"], bip["sink"]) if bip else None
    try:
        return BasedADC([(b["label"], b["degree"]) for b in data["basis"]], diff, aug, bip,
                        data["name"], data["max_degree"])
    except StructureError as err:
        raise ParseError(str(err), err.label) from None
    except CoefficientOverflow as err:
        raise ParseError(str(err)) from None


def parse_adc(text: str) -> BasedADC:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}",
                         f"line {err.lineno}") from None
    return adc_from_dict(data)


def _quote(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def export_dot(A: BasedADC) -> str:
    """Hasse diagram of the basis preorder as a DOT digraph.

    Edges are the covering relations of the closure; if the generating
    relation has a cycle there is no reduction and the generating edges
    are drawn instead.
    """
    g = nx.DiGraph()
    g.add_nodes_from(A.labels())
    g.add_edges_from(generating_edges(A))
    if nx.is_directed_acyclic_graph(g):
        edges = list(nx.transitive_reduction(g).edges())
    else:
        edges = list(g.edges())
    edges.sort(key=lambda e: (A.index_of(e[0]), A.index_of(e[1])))
    lines = [f"digraph {_quote(A.name)} {{", "  rankdir=BT;"]
    for e in A.basis:
        lines.append(f"  {_quote(e.label)} [label={_quote(f'{e.label} ({e.degree})')}];")
    for u, v in edges:
        lines.append(f"  {_quote(u)} -> {_quote(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
