"""Run configuration: one JSON file drives taxonomy, parameters, and grid.

Every field has a default, so an empty JSON object is a valid config that
reproduces the standard adult-parameter runs on the bundled animal
taxonomy. The taxonomy may be given inline (nested name -> children maps)
or as a path to a JSON file, resolved relative to the config file.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .experiment import (
    CONDITION_NAMES,
    DEFAULT_SEQ_TEST_OFFSET,
    DEFAULT_SIM_TEST_OFFSET,
    Ablation,
    Presentation,
)
from .generalization import DEFAULT_TEST_COUNTS, MatchLevel
from .learner import Params
from .taxonomy import GroupLevel, TaxonomyError, build_taxonomy

DEFAULT_TAXONOMY_SPEC: dict = {
    "animal": {
        "dog": {"dalmatian": {}, "poodle": {}, "terrier": {}},
        "bird": {"toucan": {}, "parrot": {}, "eagle": {}},
        "cat": {"siamese": {}, "tabby": {}, "persian": {}},
    }
}


class ConfigError(ValueError):
    """Raised with a field-level message when a config fails validation."""


@dataclass
class RunConfig:
    taxonomy_spec: dict = field(default_factory=lambda: json.loads(json.dumps(DEFAULT_TAXONOMY_SPEC)))
    params: Params = field(default_factory=Params)
    conditions: tuple[str, ...] = ("1-example", "3-subordinate")
    presentations: tuple[str, ...] = ("simultaneous", "sequential")
    ablations: tuple[str, ...] = ("full",)
    training_subordinate: str | None = None
    test_counts: dict[MatchLevel, int] = field(default_factory=lambda: dict(DEFAULT_TEST_COUNTS))
    test_offset_simultaneous: int = DEFAULT_SIM_TEST_OFFSET
    test_offset_sequential: int = DEFAULT_SEQ_TEST_OFFSET
    csv_path: str | None = None
    svg_path: str | None = None
    trace_path: str | None = None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def _group_map(raw: Any, fieldname: str, defaults: Mapping[GroupLevel, float]) -> dict[GroupLevel, float]:
    """Parse a per-group map of positive reals; a bare number broadcasts."""
    if raw is None:
        return dict(defaults)
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        _require(raw > 0, f"{fieldname} must be a positive number, got {raw!r}")
        return {level: float(raw) for level in GroupLevel}
    _require(isinstance(raw, Mapping), f"{fieldname} must be a number or a group map")
    out = dict(defaults)
    for key, value in raw.items():
        try:
            level = GroupLevel(key)
        except ValueError:
            raise ConfigError(
                f"{fieldname}.{key}: unknown group (expected one of "
                f"{[g.value for g in GroupLevel]})"
            ) from None
        _require(
            isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0,
            f"{fieldname}.{level.value} must be a positive number, got {value!r}",
        )
        out[level] = float(value)
    return out


def _parse_params(raw: Any) -> Params:
    if raw is None:
        return Params()
    _require(isinstance(raw, Mapping), "params must be an object")
    known = {"gamma0", "k", "d", "gamma_growth_exponent"}
    for key in raw:
        _require(key in known, f"params.{key}: unknown field")
    exponent = raw.get("gamma_growth_exponent", 1.0)
    _require(
        isinstance(exponent, (int, float)) and not isinstance(exponent, bool) and exponent >= 0,
        f"params.gamma_growth_exponent must be a number >= 0, got {exponent!r}",
    )
    defaults = Params()
    return Params(
        gamma0=_group_map(raw.get("gamma0"), "params.gamma0", defaults.gamma0),
        k=_group_map(raw.get("k"), "params.k", defaults.k),
        d=_group_map(raw.get("d"), "params.d", defaults.d),
        gamma_growth_exponent=float(exponent),
    )


def _parse_names(raw: Any, fieldname: str, allowed: set[str], default: tuple[str, ...]) -> tuple[str, ...]:
    if raw is None:
        return default
    _require(isinstance(raw, list) and raw, f"{fieldname} must be a non-empty list")
    for name in raw:
        _require(name in allowed, f"{fieldname}: unknown entry {name!r} (expected one of {sorted(allowed)})")
    _require(len(set(raw)) == len(raw), f"{fieldname} has duplicate entries")
    return tuple(raw)


def _parse_test_counts(raw: Any) -> dict[MatchLevel, int]:
    if raw is None:
        return dict(DEFAULT_TEST_COUNTS)
    _require(isinstance(raw, Mapping), "test_counts must be an object")
    out = dict(DEFAULT_TEST_COUNTS)
    for key, value in raw.items():
        try:
            level = MatchLevel(key)
        except ValueError:
            raise ConfigError(
                f"test_counts.{key}: unknown match level (expected one of "
                f"{[m.value for m in MatchLevel]})"
            ) from None
        _require(
            isinstance(value, int) and not isinstance(value, bool) and value >= 0,
            f"test_counts.{level.value} must be a non-negative integer, got {value!r}",
        )
        out[level] = value
    _require(any(out.values()), "test_counts: at least one level must be positive")
    _require(
        out[MatchLevel.SUBORDINATE] > 0,
        "test_counts.subordinate must be positive (it is the scale reference)",
    )
    return out


def _parse_offset(raw: Any, fieldname: str, default: int) -> int:
    if raw is None:
        return default
    _require(
        isinstance(raw, int) and not isinstance(raw, bool) and raw >= 1,
        f"{fieldname} must be an integer >= 1, got {raw!r}",
    )
    return raw


def _parse_path(raw: Any, fieldname: str) -> str | None:
    if raw is None:
        return None
    _require(isinstance(raw, str) and raw, f"{fieldname} must be a non-empty string")
    return raw


def _load_taxonomy_spec(raw: Any, base_dir: Path) -> dict:
    if raw is None:
        return json.loads(json.dumps(DEFAULT_TAXONOMY_SPEC))
    if isinstance(raw, str):
        path = Path(raw)
        if not path.is_absolute():
            path = base_dir / path
        try:
            raw = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigError(f"taxonomy: file not found: {path}") from None
        except json.JSONDecodeError as err:
            raise ConfigError(f"taxonomy: invalid JSON in {path}: {err}") from None
    _require(isinstance(raw, Mapping), "taxonomy must be a path or a nested object")
    spec = json.loads(json.dumps(raw))
    try:
        build_taxonomy(spec)
    except TaxonomyError as err:
        raise ConfigError(f"taxonomy: {err}") from None
    return spec


def parse_config(data: Mapping[str, Any], base_dir: Path | None = None) -> RunConfig:
    """Validate a parsed JSON object and fill defaults."""
    _require(isinstance(data, Mapping), "config root must be a JSON object")
    base_dir = base_dir or Path.cwd()
    known = {
        "taxonomy", "params", "conditions", "presentations", "ablations",
        "training_subordinate", "test_counts",
        "test_offset_simultaneous", "test_offset_sequential",
        "csv", "svg", "trace",
    }
    for key in data:
        _require(key in known, f"{key}: unknown config field")

    training = data.get("training_subordinate")
    if training is not None:
        _require(
            isinstance(training, str) and training,
            f"training_subordinate must be a feature name, got {training!r}",
        )

    try:
        params = _parse_params(data.get("params"))
    except ConfigError:
        raise
    except ValueError as err:  # Params' own validation
        raise ConfigError(str(err)) from None

    return RunConfig(
        taxonomy_spec=_load_taxonomy_spec(data.get("taxonomy"), base_dir),
        params=params,
        conditions=_parse_names(
            data.get("conditions"), "conditions", set(CONDITION_NAMES),
            ("1-example", "3-subordinate"),
        ),
        presentations=_parse_names(
            data.get("presentations"), "presentations",
            {p.value for p in Presentation}, ("simultaneous", "sequential"),
        ),
        ablations=_parse_names(
            data.get("ablations"), "ablations", {a.value for a in Ablation}, ("full",),
        ),
        training_subordinate=training,
        test_counts=_parse_test_counts(data.get("test_counts")),
        test_offset_simultaneous=_parse_offset(
            data.get("test_offset_simultaneous"), "test_offset_simultaneous",
            DEFAULT_SIM_TEST_OFFSET,
        ),
        test_offset_sequential=_parse_offset(
            data.get("test_offset_sequential"), "test_offset_sequential",
            DEFAULT_SEQ_TEST_OFFSET,
        ),
        csv_path=_parse_path(data.get("csv"), "csv"),
        svg_path=_parse_path(data.get("svg"), "svg"),
        trace_path=_parse_path(data.get("trace"), "trace"),
    )


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a config file, filling defaults."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as err:
        raise ConfigError(f"invalid JSON in {path}: {err}") from None
    return parse_config(data, base_dir=path.parent)


def serialize_config(config: RunConfig) -> dict:
    """JSON-able dict that load_config parses back to an equal RunConfig.

    The taxonomy is emitted inline so the serialized form is self-contained.
    """
    out: dict[str, Any] = {
        "taxonomy": config.taxonomy_spec,
        "params": {
            "gamma0": {g.value: config.params.gamma0[g] for g in GroupLevel},
            "k": {g.value: config.params.k[g] for g in GroupLevel},
            "d": {g.value: config.params.d[g] for g in GroupLevel},
            "gamma_growth_exponent": config.params.gamma_growth_exponent,
        },
        "conditions": list(config.conditions),
        "presentations": list(config.presentations),
        "ablations": list(config.ablations),
        "test_counts": {m.value: n for m, n in config.test_counts.items()},
        "test_offset_simultaneous": config.test_offset_simultaneous,
        "test_offset_sequential": config.test_offset_sequential,
    }
    if config.training_subordinate is not None:
        out["training_subordinate"] = config.training_subordinate
    for key, value in (
        ("csv", config.csv_path), ("svg", config.svg_path), ("trace", config.trace_path),
    ):
        if value is not None:
            out[key] = value
    return out
