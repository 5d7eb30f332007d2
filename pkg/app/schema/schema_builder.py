from typing import Any, Dict, List, Optional

SCHEMA_VERSION = "1.0"


def _color_block(colors) -> List[Dict[str, Any]]:
    """One entry per component, 1-based; ``x`` is present when q^{a2} was fixed to a rational."""
    block = []
    for cid, color in enumerate(colors, start=1):
        entry = {"component": cid, "a1": color.a1, "var": color.var}
        if color.x_value is not None:
            entry["x"] = str(color.x_value)
        block.append(entry)
    return block


def build_invariant_document(
    *,
    result,
    seed: int,
    specialized: Optional[Dict[str, str]] = None,
) -> Dict[str, Any]:
    """
    Build the JSON document for one invariant evaluation.

    Scalars are stored in the canonical `num ; den` text so the document
    can be parsed back with parse_scalar.
    """

    document = {
        # ---- schema metadata ----
        "schema_version": SCHEMA_VERSION,
        "kind": "invariant",
        "seed": int(seed),

        # ---- link ----
        "braid": result.braid,
        "colors": _color_block(result.colors),
        "cut": int(result.cut),
        "strand": int(result.strand),
        "writhe": int(result.writhe),
        "self_writhe": list(result.self_writhe),

        # ---- values ----
        "bracket": result.bracket.to_text(),
        "modified_dim": result.modified_dim.to_text(),
        "value": result.value.to_text(),
        "normalized": result.normalized.to_text(),
        "specialized": dict(specialized or {}),
    }

    return document


def build_verify_document(
    *,
    level: str,
    seed: int,
    checks: List[Dict[str, Any]],
) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verify",
        "level": level,
        "seed": int(seed),
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


def build_sweep_document(
    *,
    braid: str,
    colors,
    component: int,
    lo: int,
    hi: int,
    rows: List[Dict[str, Any]],
    complete: bool,
    reason: Optional[str],
    seed: int,
    specialized: Optional[Dict[str, str]] = None,
) -> Dict[str, Any]:
    """Sweep over a1 of one component; ``complete`` is False when a budget cut the range short."""
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "sweep",
        "seed": int(seed),
        "braid": braid,
        "colors": _color_block(colors),
        "component": int(component),
        "range": {"lo": int(lo), "hi": int(hi)},
        "complete": bool(complete),
        "reason": reason,
        "specialized": dict(specialized or {}),
        "rows": rows,
    }


def build_certificate_document(
    *,
    source: str,
    max_order: int,
    max_mdegree: int,
    operators: List[Dict[str, Any]],
    certificate: Optional[Dict[str, Any]],
    status: str,
    reason: Optional[str],
    seed: int,
) -> Dict[str, Any]:
    """``status`` is one of certified | operators_only | no_witness."""
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "certificate",
        "seed": int(seed),
        "source": source,
        "bounds": {"max_order": int(max_order), "max_mdegree": int(max_mdegree)},
        "status": status,
        "reason": reason,
        "operators": operators,
        "certificate": certificate,
    }
