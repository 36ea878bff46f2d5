"""JSON Schema documents for every CLI report, dumped by ``--schema``."""

from __future__ import annotations

PARTITION = {"type": "array", "items": {"type": "integer", "minimum": 1}}
MATRIX_ROWS = {"type": "array", "items": {"type": "array", "items": {"type": ["integer", "string"]}}}

ENVELOPE = {
    "tool_version": {"type": "string"},
    "command": {"type": "string"},
    "inputs": {"type": "object"},
    "seed": {"type": ["integer", "null"]},
}

VERDICT = {
    "model": {"type": "string"},
    "pass": {"type": "boolean"},
    "failing_indices": {"type": "array", "items": {"type": "integer", "minimum": 0},
                        "description": "1-based positions; [0] marks a whole-partition failure"},
    "detail": {"type": "string"},
}

SCAN_REPORT = {
    "label": {"type": "string"},
    "field": {"type": "string"},
    "mode": {"enum": ["exhaustive", "sampled"]},
    "budget": {"type": "integer"},
    "directions": {"type": "integer"},
    "points_visited": {"type": "integer"},
    "points_evaluated": {"type": "integer",
                         "description": "points examined after the trace hyperplane reduction"},
    "nilpotent_count": {"type": "integer"},
    "jordan_type_histogram": {
        "type": "array",
        "items": {"type": "object", "required": ["type", "count", "witness"],
                  "properties": {"type": PARTITION, "count": {"type": "integer"}, "witness": MATRIX_ROWS}},
    },
    "violations": {
        "type": "array",
        "items": {"type": "object",
                  "properties": {"type": PARTITION, "reason": {"type": "string"},
                                 "model": {"type": "string"}, "witness": MATRIX_ROWS}},
    },
    "advisory": {"type": "boolean", "description": "true for p in {2, 3}: violations are for triage only"},
    "params": {"type": "object"},
    "status": {"enum": ["pass", "advisory-violation", "violation"]},
    "seed_used": {"type": ["integer", "null"], "description": "null for exhaustive scans"},
}

DIMENSION = {
    "target": {"enum": ["pardim", "torus", "theta"]},
    "params": {"type": "object"},
    "primes": {"type": "array", "items": {"type": "integer"}},
    "counts": {"type": "array", "items": {"type": "integer"}},
    "raw_exponent": {"type": "number"},
    "estimate": {"type": "integer"},
    "residual": {"type": "number"},
    "tolerance": {"type": "number"},
    "within_tolerance": {"type": "boolean"},
    "predicted": {"type": "integer"},
    "agrees": {"type": "boolean"},
    "status": {"enum": ["pass", "fail", "inconclusive"]},
}

RESULTS = {
    "check": VERDICT | {"inputs_transposed": {"type": "object"}},
    "lr": {"coefficient": {"type": "integer", "minimum": 0}},
    "lr-support": {"support": {"type": "array", "items": PARTITION}},
    "scan": SCAN_REPORT,
    "oracle quot": {
        "trials": {"type": "integer"},
        "violations": {"type": "integer"},
        "field": {"type": "string"},
        "max_size": {"type": "integer"},
        "examples": {"type": "array"},
    },
    "oracle interlace": {
        "lambda": PARTITION, "lambda_prime": PARTITION, "A": MATRIX_ROWS,
        "K_prime": MATRIX_ROWS, "jordan_type": PARTITION, "round_trip": {"type": "boolean"},
    },
    "theta witness": {
        "lambda1": PARTITION, "lambda2": PARTITION, "X": MATRIX_ROWS, "Y": MATRIX_ROWS,
        "type_YX": PARTITION, "type_XY": PARTITION, "round_trip": {"type": "boolean"},
    },
    "theta max-match": {"lambda1": PARTITION, "dim_w": {"type": "integer"}, "max_match": PARTITION},
    "theta scan": {
        "dim_v": {"type": "integer"}, "dim_w": {"type": "integer"}, "field": {"type": "string"},
        "points_visited": {"type": "integer"}, "pairs": {"type": "array"},
        "match_set_equal": {"type": "boolean"},
        "missing_pairs": {"type": "array"}, "unexpected_pairs": {"type": "array"},
    },
    "dim-estimate": DIMENSION,
    "jordan": {
        "field": {"type": "string"}, "size": {"type": "integer"},
        "jordan_type": PARTITION, "transpose": PARTITION,
        "power_ranks": {"type": "array", "items": {"type": "integer"}},
    },
    "report": {
        "out_dir": {"type": "string"},
        "files": {"type": "array", "items": {"type": "string"}},
        "rows": {"type": "array", "items": {"type": "object"}},
        "status": {"enum": ["pass", "fail"]},
    },
}


def schema_for(command: str) -> dict:
    props = dict(ENVELOPE)
    props.update(RESULTS[command])
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": f"orbit-gate {command}",
        "type": "object",
        "required": sorted(ENVELOPE),
        "properties": props,
    }
