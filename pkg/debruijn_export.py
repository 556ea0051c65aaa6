"""JSON, DOT and XLSX writers for code sets, reports and search results."""

# -*- coding: utf-8 -*-
# debruijn_export.py
import json
import os

from debruijn_core import Config, ExportError, check_cap, get_logger
from debruijn_graph import CodeSet, GraphSpace, SetKind, VertexSet, word_of
from debruijn_verify import SearchResult, VerificationReport, id_signature
from debruijn_words import SymbolPermutation, Word

try:
    import openpyxl
    from openpyxl.styles import Font, PatternFill
    HAS_OPENPYXL = True
except ImportError:
    HAS_OPENPYXL = False

LOGGER = get_logger(__name__)


def dumps(payload) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

# ==============================================================================
#  DICT CONVERSION
# ==============================================================================


def codeset_to_dict(code: CodeSet) -> dict:
    return {
        "d": code.space.d,
        "n": code.space.n,
        "t": code.t,
        "kind": code.kind.value,
        "theorem": code.theorem,
        "size": len(code),
        "code": [str(w) for w in code.words()],
    }


def codeset_from_dict(payload: dict) -> CodeSet:
    """Rebuild a CodeSet, rejecting malformed payloads with ExportError."""
    try:
        d, n = int(payload["d"]), int(payload["n"])
        words = payload["code"]
        if not isinstance(words, list):
            raise TypeError("'code' must be a list of words")
        space = GraphSpace(d, n)
        members = VertexSet.from_words(space, [Word.parse(str(w), d) for w in words])
        t = payload.get("t")
        kind = SetKind(payload.get("kind", SetKind.IDENTIFYING.value))
        code = CodeSet(space, members, None if t is None else int(t), str(payload.get("theorem", "custom")), kind)
    except ExportError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ExportError(f"Invalid code set payload: {e}") from e
    if len(code) != len(words):
        raise ExportError(f"Code set payload lists {len(words)} words but only {len(code)} are distinct")
    return code


def _witness(item):
    if isinstance(item, SymbolPermutation):
        return list(item.images)
    if isinstance(item, Word):
        return str(item)
    return item


def report_to_dict(report: VerificationReport) -> dict:
    return {
        "valid": report.valid,
        "failure_kind": report.failure_kind.value,
        "witnesses": [_witness(w) for w in report.witnesses],
        "checked_count": report.checked_count,
    }


def search_to_dict(result: SearchResult) -> dict:
    payload = {
        "d": result.space.d,
        "n": result.space.n,
        "t": result.t,
        "kind": result.kind.value,
        "minimum": result.minimum,
        "code": [str(w) for w in result.code.words()] if result.found else None,
        "levels": [{"size": lv.size, "candidates": lv.candidates, "valid": lv.valid} for lv in result.levels],
        "last_exhausted_size": result.last_exhausted_size,
    }
    if len(result.codes) > 1:
        payload["codes"] = [[str(w) for w in c.words()] for c in result.codes]
    if result.twins is not None:
        payload["identifiable"] = False
        payload["twins"] = [str(w) for w in result.twins]
    return payload

# ==============================================================================
#  FILES
# ==============================================================================


def write_text(text: str, path=None) -> str:
    if path:
        try:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text)
        except OSError as e:
            raise ExportError(f"Could not write {path}: {e}") from e
        LOGGER.info("Wrote %s", path)
    return text


def write_codeset(code: CodeSet, path=None) -> str:
    return write_text(dumps(codeset_to_dict(code)), path)


def read_codeset(path) -> CodeSet:
    if not os.path.exists(path):
        raise ExportError(f"No such file: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ExportError(f"Could not read code set from {path}: {e}") from e
    if not isinstance(payload, dict):
        raise ExportError(f"{path} does not hold a JSON object")
    return codeset_from_dict(payload)


def to_dot(space: GraphSpace, code: CodeSet = None) -> str:
    """Full digraph, one edge per (vertex, letter); members drawn filled black."""
    check_cap(space.order, Config.DOT_EXPORT_CAP, f"DOT export of {space}")
    if code is not None and code.space != space:
        raise ExportError(f"code set lives on {code.space}, not {space}")
    lines = [f'digraph "B({space.d},{space.n})" {{']
    members = set(code.ranks()) if code is not None else set()
    for rank in range(space.order):
        label = str(word_of(rank, space))
        style = ', style=filled, fillcolor=black, fontcolor=white' if rank in members else ""
        lines.append(f'  "{label}" [label="{label}"{style}];')
    for rank in range(space.order):
        src = str(word_of(rank, space))
        base = (rank * space.d) % space.order
        for a in range(space.d):
            lines.append(f'  "{src}" -> "{word_of(base + a, space)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_xlsx(space: GraphSpace, path, code: CodeSet = None, t: int = None):
    """One row per vertex: rank, word, membership and (with t) its identifying signature."""
    if not HAS_OPENPYXL:
        raise ExportError("openpyxl library missing. Please install it for XLSX export.")
    check_cap(space.order, Config.DOT_EXPORT_CAP, f"XLSX export of {space}")
    members = code if code is not None else CodeSet(space, VertexSet.empty(space))
    headers = ["Rank", "Word", "Member"] + (["Signature"] if t is not None else [])

    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = f"B({space.d},{space.n})"
    for col_idx, header in enumerate(headers, 1):
        cell = ws.cell(row=1, column=col_idx, value=header)
        cell.font = Font(bold=True, color="FFFFFF")
        cell.fill = PatternFill(start_color="4F81BD", end_color="4F81BD", fill_type="solid")

    for rank in range(space.order):
        w = word_of(rank, space)
        row = [rank, str(w), "yes" if rank in members else ""]
        if t is not None:
            row.append(" ".join(str(x) for x in id_signature(members, w, t).words(space)))
        for col_idx, val in enumerate(row, 1):
            ws.cell(row=rank + 2, column=col_idx, value=val)

    ws.column_dimensions["B"].width = max(10, space.n + 4)
    ws.column_dimensions["D"].width = 40
    try:
        wb.save(path)
    except OSError as e:
        raise ExportError(f"Could not write {path}: {e}") from e
    LOGGER.info("Wrote %s", path)
    return path
