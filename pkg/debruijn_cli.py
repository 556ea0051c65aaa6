"""Command-line front end: construct, verify, search, decode and export sets on B(d, n)."""

# -*- coding: utf-8 -*-
# debruijn_cli.py
import argparse
import sys
from dataclasses import dataclass
from typing import Optional

from colorama import Fore, Style, just_fix_windows_console
from tqdm import tqdm

from debruijn_codes import CodeSpec, IdentifiabilityStatus, Theorem, construct, identifiability
from debruijn_core import Config, DeBruijnError, NotIdentifiableError, PreconditionError, get_logger
from debruijn_cover import (
    determining_set,
    dominating_1,
    dominating_t,
    loop_determining_set,
    resolving_set,
)
from debruijn_export import (
    codeset_to_dict,
    dumps,
    read_codeset,
    report_to_dict,
    search_to_dict,
    to_dot,
    write_text,
    write_xlsx,
)
from debruijn_graph import GraphSpace, SetKind, word_of
from debruijn_verify import (
    Signature,
    decode_signature,
    min_identifying_search,
    verify_determining,
    verify_dominating,
    verify_identifying,
    verify_resolving,
)
from debruijn_words import Word
from version import APP_VERSION

LOGGER = get_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ERROR = 2

VERBS = ("code", "dominate", "resolve", "determine", "verify", "min", "twins", "decode", "export")


@dataclass
class CommandRequest:
    verb: str
    d: Optional[int] = None
    n: Optional[int] = None
    t: Optional[int] = None
    theorem: Optional[str] = None
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    observed: Optional[str] = None
    fmt: str = "json"
    progress: bool = False
    workers: Optional[int] = None
    size_cap: Optional[int] = None
    collect_all: bool = False

    @property
    def radius(self) -> int:
        return 1 if self.t is None else self.t


class _ProgressBar:
    """Adapts progress_callback(curr, total) to a tqdm bar on stderr."""

    def __init__(self, enabled: bool, desc: str):
        self.enabled = enabled
        self.desc = desc
        self.bar = None

    def __call__(self, curr, total):
        if not self.enabled:
            return
        if self.bar is None:
            self.bar = tqdm(total=total, desc=self.desc, file=sys.stderr, leave=False)
        elif self.bar.total != total:
            self.bar.reset(total=total)
        self.bar.n = curr
        self.bar.refresh()

    def close(self):
        if self.bar is not None:
            self.bar.close()
            self.bar = None


def _diagnostic(message: str, color=Fore.RED):
    sys.stderr.write(f"{color}error:{Style.RESET_ALL} {message}\n")


def _space(req: CommandRequest) -> GraphSpace:
    if req.d is None or req.n is None:
        raise PreconditionError(f"'{req.verb}' needs -d and -n")
    return GraphSpace(req.d, req.n)


def _emit(req: CommandRequest, payload, out) -> None:
    text = dumps(payload)
    if req.output_path:
        write_text(text, req.output_path)
    else:
        out.write(text)


def _emit_code(req: CommandRequest, code, out) -> int:
    if req.fmt == "dot":
        text = to_dot(code.space, code)
        if req.output_path:
            write_text(text, req.output_path)
        else:
            out.write(text)
    elif req.fmt == "xlsx":
        if not req.output_path:
            raise PreconditionError("XLSX output needs --out")
        write_xlsx(code.space, req.output_path, code, code.t)
    else:
        _emit(req, codeset_to_dict(code), out)
    return EXIT_OK

# ==============================================================================
#  VERBS
# ==============================================================================


def _cmd_code(req, out, bar):
    tag = req.theorem or Theorem.AUTO.value
    if tag not in {th.value for th in Theorem}:
        raise PreconditionError(f"unknown theorem tag {tag!r} ({', '.join(th.value for th in Theorem)})")
    spec = CodeSpec(_space(req), req.radius, tag)
    code = construct(spec, req.workers, bar)
    return _emit_code(req, code, out)


def _cmd_dominate(req, out, bar):
    space, t = _space(req), req.radius
    choice = req.theorem or ("ceiling" if t == 1 else "layered")
    if choice == "ceiling":
        if t != 1:
            raise PreconditionError("the ceiling construction is 1-dominating; use --theorem layered")
        code = dominating_1(space)
    elif choice == "layered":
        code = dominating_t(space, t)
    else:
        raise PreconditionError(f"unknown dominating construction {choice!r} (ceiling, layered)")
    return _emit_code(req, code, out)


def _cmd_resolve(req, out, bar):
    return _emit_code(req, resolving_set(_space(req), req.theorem or "nonzero_suffix"), out)


def _cmd_determine(req, out, bar):
    choice = req.theorem or "letter_packing"
    if choice == "letter_packing":
        code = determining_set(_space(req))
    elif choice == "loops":
        code = loop_determining_set(_space(req))
    else:
        raise PreconditionError(f"unknown determining construction {choice!r} (letter_packing, loops)")
    return _emit_code(req, code, out)


def _load(req):
    if not req.input_path:
        raise PreconditionError(f"'{req.verb}' needs --in FILE")
    return read_codeset(req.input_path)


def _cmd_verify(req, out, bar):
    code = _load(req)
    t = req.t if req.t is not None else (code.t if code.t is not None else 1)
    if code.kind is SetKind.IDENTIFYING:
        report = verify_identifying(code, t, req.workers, bar)
    elif code.kind is SetKind.DOMINATING:
        report = verify_dominating(code, t, req.workers, bar)
    elif code.kind is SetKind.RESOLVING:
        report = verify_resolving(code, req.workers, bar)
    else:
        report = verify_determining(code)
    _emit(req, report_to_dict(report), out)
    return EXIT_OK if report.valid else EXIT_INVALID


def _cmd_min(req, out, bar):
    result = min_identifying_search(
        _space(req), req.radius, size_cap=req.size_cap, collect_all=req.collect_all,
        workers=req.workers, progress_callback=bar,
    )
    _emit(req, search_to_dict(result), out)
    return EXIT_OK if result.found else EXIT_INVALID


def _cmd_twins(req, out, bar):
    space, t = _space(req), req.radius
    status = identifiability(space, t)
    payload = {
        "d": space.d,
        "n": space.n,
        "t": t,
        "identifiable": {
            IdentifiabilityStatus.IDENTIFIABLE: True,
            IdentifiabilityStatus.NOT_IDENTIFIABLE: False,
        }.get(status.status),
        "theorem": status.theorem.value if status.theorem else None,
        "twins": [str(w) for w in status.twins] if status.twins else None,
    }
    _emit(req, payload, out)
    return EXIT_INVALID if status.status is IdentifiabilityStatus.NOT_IDENTIFIABLE else EXIT_OK


def _cmd_decode(req, out, bar):
    code = _load(req)
    if req.observed is None:
        raise PreconditionError("'decode' needs --observed")
    t = req.t if req.t is not None else (code.t if code.t is not None else 1)
    words = [Word.parse(item, code.space.d) for item in req.observed.split(",") if item.strip()]
    observed = Signature.of(code.space, words)
    vertex = decode_signature(code, t, observed)
    _emit(req, {"observed": [str(w) for w in observed.words(code.space)], "t": t,
                "vertex": str(vertex) if vertex is not None else None}, out)
    return EXIT_OK if vertex is not None else EXIT_INVALID


def _cmd_export(req, out, bar):
    code = read_codeset(req.input_path) if req.input_path else None
    space = code.space if code is not None else _space(req)
    if req.fmt == "xlsx":
        if not req.output_path:
            raise PreconditionError("XLSX output needs --out")
        write_xlsx(space, req.output_path, code, req.t if req.t is not None else (code.t if code else None))
        return EXIT_OK
    if req.fmt == "dot":
        text = to_dot(space, code)
        if req.output_path:
            write_text(text, req.output_path)
        else:
            out.write(text)
        return EXIT_OK
    if code is not None:
        _emit(req, codeset_to_dict(code), out)
        return EXIT_OK
    if space.order > Config.DOT_EXPORT_CAP:
        raise PreconditionError(f"graph export is limited to {Config.DOT_EXPORT_CAP} vertices")
    vertices = [str(word_of(r, space)) for r in range(space.order)]
    edge_list = [[vertices[r], vertices[(r * space.d) % space.order + a]]
                 for r in range(space.order) for a in range(space.d)]
    _emit(req, {"d": space.d, "n": space.n, "vertices": vertices, "edges": edge_list}, out)
    return EXIT_OK


HANDLERS = {
    "code": _cmd_code,
    "dominate": _cmd_dominate,
    "resolve": _cmd_resolve,
    "determine": _cmd_determine,
    "verify": _cmd_verify,
    "min": _cmd_min,
    "twins": _cmd_twins,
    "decode": _cmd_decode,
    "export": _cmd_export,
}

# ==============================================================================
#  ENTRY POINTS
# ==============================================================================


def run(req: CommandRequest, out=None) -> int:
    """Dispatch one request; returns the process exit code."""
    out = out or sys.stdout
    bar = _ProgressBar(req.progress, req.verb)
    try:
        return HANDLERS[req.verb](req, out, bar if req.progress else None)
    except NotIdentifiableError as e:
        d, n = (req.d, req.n)
        _emit(req, {"d": d, "n": n, "t": req.radius, "identifiable": False,
                    "twins": [str(w) for w in e.twins]}, out)
        return EXIT_INVALID
    except DeBruijnError as e:
        LOGGER.debug("%s failed: %s", req.verb, e)
        _diagnostic(str(e))
        return EXIT_ERROR
    finally:
        bar.close()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-d", type=int, help="alphabet size")
    common.add_argument("-n", type=int, help="word length")
    common.add_argument("-t", type=int, default=None, help="radius (default 1)")
    common.add_argument("--theorem", help="construction tag")
    common.add_argument("--in", dest="input_path", metavar="FILE", help="code set JSON to read")
    common.add_argument("--out", dest="output_path", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--format", dest="fmt", choices=("json", "dot", "xlsx"), default="json")
    common.add_argument("--observed", help='comma separated signature, e.g. "001,100"')
    common.add_argument("--progress", action="store_true", help="show progress bars on stderr")
    common.add_argument("--workers", type=int, default=None, help=f"worker threads (default {Config.WORKERS})")
    common.add_argument("--size-cap", type=int, default=None, help="largest code size to search")
    common.add_argument("--all", dest="collect_all", action="store_true", help="report every minimum code")

    parser = argparse.ArgumentParser(prog="debruijn", description="Identifying codes and related sets on directed de Bruijn graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    sub = parser.add_subparsers(dest="verb", required=True)
    helps = {
        "code": "construct a t-identifying code",
        "dominate": "construct a t-dominating set",
        "resolve": "construct a directed resolving set",
        "determine": "construct a determining set",
        "verify": "check a code set file with its oracle",
        "min": "exhaustive minimum identifying code search",
        "twins": "decide identifiability and report twins",
        "decode": "locate the vertex with an observed signature",
        "export": "write the graph (and optional code) as JSON, DOT or XLSX",
    }
    for verb in VERBS:
        sub.add_parser(verb, parents=[common], help=helps[verb])
    return parser


def request_from_args(ns: argparse.Namespace) -> CommandRequest:
    return CommandRequest(
        verb=ns.verb, d=ns.d, n=ns.n, t=ns.t, theorem=ns.theorem,
        input_path=ns.input_path, output_path=ns.output_path, observed=ns.observed,
        fmt=ns.fmt, progress=ns.progress, workers=ns.workers, size_cap=ns.size_cap,
        collect_all=ns.collect_all,
    )


def main(argv=None) -> int:
    just_fix_windows_console()
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    return run(request_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
