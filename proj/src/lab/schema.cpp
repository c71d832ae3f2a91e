#include "mpa/lab/config.hpp"

namespace mpa::lab {

namespace {

constexpr const char* kSchema = R"json({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "mpa_lab/config/v1",
  "title": "mpa_lab experiment configuration",
  "type": "object",
  "required": ["schema_version", "kind", "experiment"],
  "properties": {
    "schema_version": {"const": 1},
    "kind": {"enum": ["wegner", "box-quality", "two-box", "interval-event", "msa-check", "recursion", "localization", "cover-selftest"]},
    "seed": {"type": "integer", "minimum": 0, "default": 1},
    "samples": {"type": "integer", "minimum": 1, "description": "Monte Carlo samples; required for every sampled kind, >= 100 for box-quality"},
    "workers": {"type": "integer", "minimum": 0, "description": "0 = one per hardware thread; never changes output bytes"},
    "output_dir": {"type": "string"},
    "model": {"$ref": "#/$defs/model"},
    "experiment": {"type": "object"}
  },
  "allOf": [
    {"if": {"properties": {"kind": {"const": "wegner"}}}, "then": {"required": ["model", "samples"], "properties": {"experiment": {"$ref": "#/$defs/wegner"}}}},
    {"if": {"properties": {"kind": {"const": "box-quality"}}}, "then": {"required": ["model", "samples"], "properties": {"samples": {"minimum": 100}, "experiment": {"$ref": "#/$defs/box_quality"}}}},
    {"if": {"properties": {"kind": {"const": "two-box"}}}, "then": {"required": ["model", "samples"], "properties": {"experiment": {"$ref": "#/$defs/two_box"}}}},
    {"if": {"properties": {"kind": {"const": "interval-event"}}}, "then": {"required": ["model", "samples"], "properties": {"experiment": {"$ref": "#/$defs/interval_event"}}}},
    {"if": {"properties": {"kind": {"const": "msa-check"}}}, "then": {"required": ["model", "samples"], "properties": {"experiment": {"$ref": "#/$defs/msa_check"}}}},
    {"if": {"properties": {"kind": {"const": "recursion"}}}, "then": {"properties": {"experiment": {"$ref": "#/$defs/recursion"}}}},
    {"if": {"properties": {"kind": {"const": "localization"}}}, "then": {"required": ["model", "samples"], "properties": {"experiment": {"$ref": "#/$defs/localization"}}}},
    {"if": {"properties": {"kind": {"const": "cover-selftest"}}}, "then": {"properties": {"experiment": {"$ref": "#/$defs/cover_selftest"}}}}
  ],
  "$defs": {
    "model": {
      "type": "object",
      "required": ["n", "d"],
      "properties": {
        "n": {"type": "integer", "minimum": 1},
        "d": {"type": "integer", "minimum": 1},
        "lambda": {"type": "number", "minimum": 0, "default": 1},
        "diagonal_shift": {"type": "number", "default": 0},
        "density": {"type": "object", "properties": {
          "family": {"enum": ["uniform", "triangular"], "default": "uniform"},
          "lo": {"type": "number", "default": 0}, "hi": {"type": "number", "default": 1}}},
        "interaction": {"type": "object", "properties": {
          "kind": {"enum": ["step", "none", "table"], "default": "step"},
          "r0": {"type": "number", "minimum": 0, "default": 1},
          "u0": {"type": "number", "default": 1},
          "entries": {"type": "array", "items": {"type": "object", "required": ["y", "value"], "properties": {
            "y": {"type": "array", "items": {"type": "integer"}}, "value": {"type": "number"}}}}}}
      }
    },
    "center": {"type": "array", "items": {"type": "number"}, "description": "n*d coordinates, particle-major"},
    "box": {
      "type": "object", "required": ["center"],
      "properties": {"center": {"$ref": "#/$defs/center"}, "side": {"type": "number", "exclusiveMinimum": 0},
                     "sides": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}}},
      "oneOf": [{"required": ["side"]}, {"required": ["sides"]}]
    },
    "interval": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
    "energy": {
      "type": "object",
      "properties": {"E": {"type": "number"}, "interval": {"$ref": "#/$defs/interval"},
                     "points": {"type": "integer", "minimum": 2, "default": 101}, "refine": {"type": "boolean", "default": true}},
      "oneOf": [{"required": ["E"]}, {"required": ["interval"]}]
    },
    "quality": {
      "type": "object", "required": ["kind", "parameter"],
      "properties": {"kind": {"enum": ["suitable", "ses", "regular", "suitably_nonresonant", "nonresonant", "good"]},
                     "parameter": {"type": "number", "exclusiveMinimum": 0}, "beta": {"type": "number", "exclusiveMinimum": 0}}
    },
    "wegner": {
      "type": "object", "required": ["box"],
      "properties": {"estimator": {"enum": ["trace", "resolvent-norm"], "default": "trace"}, "box": {"$ref": "#/$defs/box"},
                     "interval": {"$ref": "#/$defs/interval"}, "E": {"type": "number"}, "eps": {"type": "number", "minimum": 0}}
    },
    "box_quality": {
      "type": "object", "required": ["box", "energy", "quality"],
      "properties": {"box": {"$ref": "#/$defs/box"}, "energy": {"$ref": "#/$defs/energy"}, "quality": {"$ref": "#/$defs/quality"}}
    },
    "two_box": {
      "type": "object", "required": ["first", "second", "eps"],
      "properties": {"first": {"$ref": "#/$defs/box"}, "second": {"$ref": "#/$defs/box"}, "eps": {"type": "number", "minimum": 0},
                     "independent_fields": {"type": "boolean", "default": false}}
    },
    "interval_event": {
      "type": "object", "required": ["x", "y", "L", "m", "energy"],
      "properties": {"x": {"$ref": "#/$defs/center"}, "y": {"$ref": "#/$defs/center"}, "L": {"type": "number", "exclusiveMinimum": 0},
                     "m": {"type": "number", "exclusiveMinimum": 0}, "energy": {"$ref": "#/$defs/energy"}}
    },
    "msa_check": {
      "type": "object", "required": ["E"],
      "properties": {
        "check": {"enum": ["msa", "pi-transfer", "energy-shift", "implications", "preregular"], "default": "msa"},
        "E": {"type": "number"},
        "center": {"$ref": "#/$defs/center"}, "L": {"type": "number"}, "ell": {"type": "number"},
        "msa": {"type": "object", "required": ["mode"], "properties": {
          "mode": {"enum": ["suitable", "regular", "ses"]}, "J": {"type": "integer", "minimum": 1, "default": 1},
          "theta": {"type": "number"}, "s": {"type": "number"}, "m_ell": {"type": "number"}, "kappa": {"type": "number"},
          "zeta0": {"type": "number"}, "beta": {"type": "number"}}},
        "box": {"$ref": "#/$defs/box"},
        "transfer": {"type": "object", "required": ["mode", "parameter"], "properties": {
          "mode": {"enum": ["suitable", "regular", "ses"]}, "parameter": {"type": "number"}, "zeta_prime": {"type": "number"}}},
        "m": {"type": "number"}, "beta": {"type": "number"}, "theta": {"type": "number"}, "zeta": {"type": "number"},
        "points": {"type": "integer", "minimum": 1, "default": 21},
        "preregular": {"type": "object", "required": ["m_star", "beta", "c1", "c2", "c3"], "properties": {
          "m_star": {"type": "number"}, "beta": {"type": "number"}, "gamma": {"type": "number", "default": 0},
          "c1": {"type": "number"}, "c2": {"type": "number"}, "c3": {"type": "number"}}}
      }
    },
    "recursion": {
      "type": "object", "required": ["stage"],
      "properties": {
        "stage": {"enum": ["msa1", "msa2", "msa3", "msa4", "chain"]},
        "p0": {"type": "number", "minimum": 0, "maximum": 1}, "log_p0": {"type": "number", "maximum": 0},
        "Y": {"type": "number"}, "N": {"type": "integer", "minimum": 1}, "d": {"type": "integer", "minimum": 1},
        "p": {"type": "number"}, "J": {"type": "integer", "minimum": 1}, "L0": {"type": "number"},
        "m0": {"type": "number"}, "gamma": {"type": "number"}, "kappa": {"type": "number"}, "beta": {"type": "number"},
        "zeta0": {"type": "number"}, "zeta1": {"type": "number"}, "zeta2": {"type": "number"},
        "L": {"type": "array", "items": {"type": "number"}},
        "max_steps": {"type": "integer", "minimum": 1}, "closure_steps": {"type": "integer", "minimum": 0},
        "chain": {"type": "object", "required": ["zeta", "zeta2", "zeta1", "beta", "zeta0", "tau", "gamma"], "properties": {
          "zeta": {"type": "number"}, "zeta2": {"type": "number"}, "zeta1": {"type": "number"}, "beta": {"type": "number"},
          "zeta0": {"type": "number"}, "tau": {"type": "number"}, "gamma": {"type": "number"}, "r": {"type": "number"},
          "kappa": {"type": "number"}, "p": {"type": "number"}, "s": {"type": "number"}, "theta": {"type": "number"},
          "N": {"type": "integer"}, "d": {"type": "integer"}}}
      }
    },
    "localization": {
      "type": "object", "required": ["box"],
      "properties": {"box": {"$ref": "#/$defs/box"}, "kernel_interval": {"$ref": "#/$defs/interval"},
                     "near_distance": {"type": "number", "default": 2}, "far_distance": {"type": "number", "default": 6},
                     "times": {"type": "array", "items": {"type": "number"}},
                     "t_max": {"type": "number", "default": 100}, "dt": {"type": "number", "default": 0.1},
                     "amplitude_pairs": {"type": "integer", "minimum": 0, "default": 16}}
    },
    "cover_selftest": {
      "type": "object", "required": ["ell", "ratio"],
      "properties": {"n": {"type": "integer", "minimum": 1, "default": 1}, "d": {"type": "integer", "minimum": 1, "default": 1},
                     "ell": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                     "ratio": {"type": "array", "items": {"type": "integer", "minimum": 6}},
                     "bad_sets": {"type": "integer", "minimum": 0, "default": 500},
                     "max_bad": {"type": "integer", "minimum": 1, "default": 3},
                     "multiplier_j": {"type": "integer", "minimum": 1, "default": 10},
                     "multiplier_N": {"type": "integer", "minimum": 1, "default": 4}}
    }
  }
})json";

}  // namespace

json config_schema() { return json::parse(kSchema); }

}  // namespace mpa::lab
