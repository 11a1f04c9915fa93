from __future__ import annotations

from datetime import datetime
from pathlib import Path

import pandas as pd
from fpdf import FPDF  # type: ignore


def safe_text(text) -> str:
    """
    Converte texto para Latin-1 (FPDF 1.x).
    Letras gregas e símbolos fora da página de código viram nomes ou '?'.
    """
    if text is None:
        return ""
    t = str(text)
    for src, dst in (("—", "-"), ("–", "-"), ("…", "..."), ("ε", "eps"), ("⊗", "x"), ("→", "->")):
        t = t.replace(src, dst)
    return t.encode("latin-1", "replace").decode("latin-1")


class ReportPDF(FPDF):
    def header(self):
        self.set_font("Arial", "B", 14)
        self.cell(0, 10, safe_text("Relatorio de desdobramento - color code / toric code"), ln=True, align="C")
        self.ln(3)


def build_pdf(df: pd.DataFrame, out: str | Path) -> Path:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    pdf = ReportPDF()
    pdf.set_auto_page_break(auto=True, margin=15)
    pdf.add_page()

    pdf.set_font("Arial", "", 11)
    now = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    failed = int((~df["ok"].astype(bool)).sum()) if len(df) else 0
    pdf.multi_cell(0, 6, safe_text(f"Data de geracao: {now}"))
    pdf.multi_cell(0, 6, safe_text(f"Verificacoes: {len(df)}  |  Falhas: {failed}"))
    pdf.ln(4)

    if df.empty:
        pdf.set_font("Arial", "I", 11)
        pdf.multi_cell(0, 6, safe_text("Nenhum relatorio encontrado no diretorio."))
    else:
        pdf.set_font("Arial", "B", 11)
        pdf.cell(50, 8, "Relatorio", border=1)
        pdf.cell(50, 8, "Verificacao", border=1)
        pdf.cell(20, 8, "OK", border=1)
        pdf.cell(70, 8, "Detalhe", border=1, ln=True)

        pdf.set_font("Arial", "", 10)
        for r in df.itertuples(index=False):
            detail = safe_text(r.detail)
            pdf.cell(50, 7, safe_text(r.report)[:26], border=1)
            pdf.cell(50, 7, safe_text(r.check)[:26], border=1)
            pdf.cell(20, 7, "sim" if bool(r.ok) else "NAO", border=1)
            pdf.cell(70, 7, detail[:38] + ("..." if len(detail) > 38 else ""), border=1, ln=True)

    # fallback se o arquivo estiver aberto em outro programa
    try:
        pdf.output(str(out))
        return out
    except PermissionError:
        alt = out.with_name(f"{out.stem}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.pdf")
        pdf.output(str(alt))
        return alt
