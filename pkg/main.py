"""
CLI: construir reticulado → desdobrar → verificar → portas → relatório.

Códigos de saída:
  0  ok
  2  erro de entrada (parâmetros inválidos, JSON corrompido ou ausente)
  3  falha de desacoplamento (testemunha no relatório)
  4  falha de verificação (primeira verificação que falhou é nomeada)
  5  falha de porta (R_d não preserva o espaço de código ou tabela diferente de C^{d-1}Z)
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from itertools import permutations
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from app.engine.boundaries import (
    ANYON_DICTIONARY_2D,
    classify_boundaries,
    condensation_span,
    expected_condensation,
    fusion_check,
)
from app.engine.codes import color_code, expected_logical_count_2d, logical_count
from app.engine.counting import verify_cell_identities, verify_overlap_counts
from app.engine.errors import DecouplingError, GateError, InvalidParams, UnfoldError, VerificationError
from app.engine.gates import (
    bipartition,
    commutator_chain,
    is_cross_copy_controlled_z,
    logical_action,
    phase_monomials,
    preserves_codespace,
    transversal_Rd,
)
from app.engine.settings import report_dir
from app.engine.unfold import UnfoldResult, disentangle, unfolded_logicals
from app.lattice.builders import build_lattice
from app.lattice.complex import (
    DUAL,
    ColoredComplex,
    boundary_components,
    euler_characteristic,
    load_json,
    save_json,
    to_primal,
    validate,
)
from app.report.pdf import build_pdf
from app.report.tables import collect_reports, write_summary_csv

log = logging.getLogger("unfold")

EXIT_HELP = """códigos de saída:
  0  ok
  2  erro de entrada (parâmetros inválidos, JSON corrompido ou ausente)
  3  falha de desacoplamento
  4  falha de verificação
  5  falha de porta
variável de ambiente: UNFOLD_REPORT_DIR (diretório padrão de saída)"""


def _write_json(path: Path, data: Dict[str, Any]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
    return path


def _emit(args: argparse.Namespace, data: Dict[str, Any], lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


def _out_dir(args: argparse.Namespace) -> Path:
    return Path(args.out) if args.out else report_dir()


def _load(path: str) -> ColoredComplex:
    L = load_json(path)
    return to_primal(L) if L.mode == DUAL else L


# -------- build --------
def cmd_build(args: argparse.Namespace) -> int:
    L = build_lattice(args.family, args.params)
    out = Path(args.out) if args.out else report_dir() / f"{args.family}.json"
    save_json(L, out)
    counts = L.counts()
    data = {
        "family": args.family,
        "params": [int(p) for p in args.params],
        "counts": {str(k): v for k, v in counts.items()},
        "file": str(out),
    }
    summary = "  ".join(f"{k}-células={v}" for k, v in counts.items())
    lines = [f"[OK] {args.family}{tuple(int(p) for p in args.params)}: {summary}", f"[OK] Reticulado salvo em {out}"]
    if args.alist:
        alist = out.with_suffix(".alist")
        alist.write_text(color_code(L).to_alist(), encoding="utf-8")
        data["alist"] = str(alist)
        lines.append(f"[OK] Color code em alist: {alist}")
    _emit(args, data, lines)
    return 0


# -------- unfold --------
def _boundary_json(L: ColoredComplex, result: UnfoldResult) -> List[Dict[str, Any]]:
    out = []
    d = L.dimension
    for entry in classify_boundaries(L, result):
        row = entry.to_json()
        expected = expected_condensation(d, entry.color)
        row["matches"] = entry.labels == condensation_span(expected["labels"], d)
        row["expected"] = expected["labels"]
        out.append(row)
    return out


def cmd_unfold(args: argparse.Namespace) -> int:
    L = _load(args.lattice)
    out = _out_dir(args)
    try:
        result = disentangle(L)
    except DecouplingError as e:
        witness = e.witness.to_string() if e.witness is not None else None
        data = {"decoupled": False, "equal_span": False, "parts": [], "boundaries": [], "witness": witness, "error": str(e)}
        _write_json(out / "unfold_report.json", data)
        _emit(args, data, [f"[ERRO] {e}", f"[ERRO] testemunha: {witness}"])
        return DecouplingError.exit_code

    _write_json(out / "U.json", result.U.to_json())
    parts = []
    for part in result.parts:
        tag = "".join(str(c) for c in part.colors)
        lat = save_json(part.complex, out / f"part_{tag}_lattice.json")
        _write_json(out / f"part_{tag}_code.json", part.code.to_json())
        row = {
            "color": part.colors[0] if len(part.colors) == 1 else part.colors,
            "n": part.code.n,
            "k": logical_count(part.code),
            "lattice": lat.name,
            "folded": part.folded,
        }
        if args.alist:
            alist = out / f"part_{tag}_code.alist"
            alist.write_text(part.code.to_alist(), encoding="utf-8")
            row["alist"] = alist.name
        parts.append(row)
        log.debug("parte %s: n=%d", tag, part.code.n)
    data = {
        **result.to_json(),
        "parts": parts,
        "attached": {"folded": result.folded, "colors": [p.colors for p in result.parts if p.folded]},
        "boundaries": _boundary_json(result.lattice, result),
        "witness": None,
    }
    if result.lattice.dimension == 2:
        data["anyons"] = ANYON_DICTIONARY_2D
    _write_json(out / "unfold_report.json", data)
    lines = [f"[OK] Desacoplado em {len(parts)} parte(s): " + ", ".join(f"cor {p['color']} (n={p['n']}, k={p['k']})" for p in parts)]
    if result.folded:
        lines.append("[INFO] Partes coladas na costura de cor 0 (cópia dobrada)")
    lines.append(f"[OK] Relatório salvo em {out / 'unfold_report.json'}")
    _emit(args, data, lines)
    return 0


# -------- verify --------
def _check_counts(L: ColoredComplex) -> Dict[str, Any]:
    d = L.dimension
    cells = [t for t in L.of_dim(d) if L.cells[t].color == 0 and not L.is_exterior(t)]
    for c in cells:
        rep = verify_overlap_counts(L, c)
        ident = verify_cell_identities(rep.counts, d)
        if not ident.ok:
            raise VerificationError(f"célula {c}: identidades violadas em s = {ident.violations}", check="counts")
        log.debug("célula %d: %s", c, rep.formula)
    detail = f"{len(cells)} células C_0"
    exteriors = boundary_components(L)
    if d == 2 and exteriors:
        k = logical_count(color_code(L))
        expected = expected_logical_count_2d(len(exteriors), euler_characteristic(L))
        if k != expected:
            raise VerificationError(f"k = {k}, esperado n - 2χ = {expected}", check="counts")
        detail += f"; k = {k} = n - 2χ"
    return {"ok": True, "detail": detail}


def _check_boundaries(L: ColoredComplex) -> Dict[str, Any]:
    result = disentangle(L)
    rows = _boundary_json(result.lattice, result)
    bad = [r for r in rows if not r["matches"]]
    if bad:
        raise VerificationError(f"fronteira {bad[0]['cell']} condensa {bad[0]['labels']}, esperado {bad[0]['expected']}", check="boundaries")
    return {"ok": True, "detail": "; ".join("{" + ", ".join(r["labels"]) + "}" for r in rows), "table": rows}


def _check_fusion(L: ColoredComplex) -> Dict[str, Any]:
    if not fusion_check(color_code(L), L):
        raise VerificationError("Z num vértice interior não viola uma face de cada cor", check="fusion")
    return {"ok": True, "detail": ""}


def _check_unfold(L: ColoredComplex) -> Dict[str, Any]:
    try:
        result = disentangle(L)
    except DecouplingError as e:
        raise VerificationError(str(e), check="unfold") from e
    return {"ok": True, "detail": f"{len(result.parts)} parte(s), s2 = {result.s2}"}


CHECKS = {
    "counts": _check_counts,
    "boundaries": _check_boundaries,
    "fusion": _check_fusion,
    "unfold": _check_unfold,
}


def cmd_verify(args: argparse.Namespace) -> int:
    L = _load(args.lattice)
    selected = [name for name in ("counts", "boundaries") if getattr(args, name)]
    if args.all or not selected:
        selected = list(CHECKS)
    checks: Dict[str, Dict[str, Any]] = {}
    failed: Optional[str] = None
    message = ""

    rep = validate(L)
    checks["validation"] = {"ok": rep.ok, "detail": "; ".join(rep.issues())}
    if not rep.ok:
        failed, message = "validation", rep.issues()[0]
    else:
        for name in selected:
            try:
                checks[name] = CHECKS[name](L)
            except (VerificationError, InvalidParams) as e:
                check = getattr(e, "check", "") or name
                checks[name] = {"ok": False, "detail": str(e)}
                failed, message = check, str(e)
                break

    data = {"checks": checks, "ok": failed is None, "failed": failed}
    path = _write_json(_out_dir(args) / "verify_report.json", data)
    lines = [f"[{'OK' if c['ok'] else 'ERRO'}] {name}: {c['detail']}" for name, c in checks.items()]
    if failed is not None:
        lines.append(f"[ERRO] Verificação '{failed}' falhou: {message}")
        _emit(args, data, lines)
        return VerificationError.exit_code
    lines.append(f"[OK] Relatório salvo em {path}")
    _emit(args, data, lines)
    return 0


# -------- gates --------
def cmd_gates(args: argparse.Namespace) -> int:
    L = _load(args.lattice)
    rep = validate(L)
    if not rep.ok:
        raise InvalidParams(f"reticulado inválido: {rep.issues()[0]}")
    result = disentangle(L)
    L = result.lattice
    code = color_code(L)
    logicals = unfolded_logicals(result)
    level = args.level or L.dimension
    out = _out_dir(args)
    data: Dict[str, Any] = {"level": level, "k": len(logicals), "preserves_codespace": False, "logical_phase_table": [], "chain": []}

    try:
        bip = bipartition(L)
        D = transversal_Rd(code, bip, level)
        data["preserves_codespace"] = preserves_codespace(D, code, logicals)
        table = logical_action(D, code, logicals)
        data["logical_phase_table"] = [list(l) + [f] for l, f in table]
        copies = [t["part"] for t in logicals.tags]
        data["copies"] = [c + 1 for c in copies]
        data["monomials"] = [[i + 1 for i in m] for m in (phase_monomials(table, level) or [])]
        data["matches_controlled_z"] = is_cross_copy_controlled_z(table, copies, level)
        if len(logicals) == level:
            orders = list(permutations(range(level))) if args.permutations else [tuple(range(level))]
            for order in orders:
                data["chain"].append(commutator_chain(code, logicals, order, bip, level).to_json())
    except GateError as e:
        data["error"] = str(e)
        _write_json(out / "gates_report.json", data)
        _emit(args, data, [f"[ERRO] {e}"])
        return GateError.exit_code

    _write_json(out / "gates_report.json", data)
    lines = [f"[INFO] R_{level} transversal em {code.n} qubits, {len(logicals)} qubit(s) lógico(s)"]
    for row in data["logical_phase_table"]:
        lines.append(f"[INFO] l = {tuple(row[:-1])}: fase {row[-1]}·2π/{2 ** level}")
    for c in data["chain"]:
        lines.append(f"[OK] cadeia {c['order']}: Z final em {c['final_z']}")
    if not data["matches_controlled_z"]:
        lines.append(f"[ERRO] Tabela de fases difere de C^{level - 1}Z entre as cópias")
        _emit(args, data, lines)
        return GateError.exit_code
    lines.append(f"[OK] Ação lógica = C^{level - 1}Z entre as cópias ({len(data['monomials'])} termo(s))")
    _emit(args, data, lines)
    return 0


# -------- report --------
def cmd_report(args: argparse.Namespace) -> int:
    src = Path(args.dir)
    if not src.is_dir():
        raise InvalidParams(f"diretório não encontrado: {src}")
    out = Path(args.out) if args.out else src
    df = collect_reports(src)
    csv = write_summary_csv(df, out / "summary.csv")
    pdf = build_pdf(df, out / "report.pdf")
    data = {"rows": len(df), "csv": str(csv), "pdf": str(pdf), "failed": int((~df["ok"].astype(bool)).sum()) if len(df) else 0}
    _emit(args, data, [f"[OK] CSV salvo em {csv}", f"[OK] Relatorio gerado: {pdf}"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--out", help="arquivo ou diretório de saída")
    common.add_argument("-v", "--verbose", action="store_true", help="detalhe por célula")
    common.add_argument("--json", action="store_true", help="imprime o relatório em JSON")

    parser = argparse.ArgumentParser(
        prog="unfold",
        description="Desdobramento de color codes em toric codes e portas transversais R_d.",
        epilog=EXIT_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="constrói um reticulado de uma família")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--alist", action="store_true", help="grava também a color code em formato alist")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("unfold", parents=[common], help="desdobra a color code e exporta as partes")
    p.add_argument("lattice")
    p.add_argument("--alist", action="store_true", help="grava também cada parte em formato alist")
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("verify", parents=[common], help="verificações de contagem e fronteiras")
    p.add_argument("lattice")
    p.add_argument("--counts", action="store_true")
    p.add_argument("--boundaries", action="store_true")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gates", parents=[common], help="ação lógica de R_d transversal")
    p.add_argument("lattice")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--permutations", action="store_true", help="testa a cadeia de comutadores em todas as ordens")
    p.set_defaults(func=cmd_gates)

    p = sub.add_parser("report", parents=[common], help="CSV e PDF a partir dos relatórios JSON")
    p.add_argument("dir")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="[%(levelname)s] %(message)s",
        force=True,
    )
    try:
        return int(args.func(args))
    except UnfoldError as e:
        print(f"[ERRO] {e}", file=sys.stderr)
        return e.exit_code
    except (OSError, ValueError) as e:
        print(f"[ERRO] {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
