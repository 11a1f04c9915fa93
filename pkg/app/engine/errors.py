"""Exceções do pacote. Cada classe corresponde a um código de saída da CLI."""
from __future__ import annotations

from typing import Any


class UnfoldError(Exception):
    exit_code = 1


class InvalidParams(UnfoldError, ValueError):
    """Parâmetros inválidos (família desconhecida, coloração impossível, k fora do intervalo)."""
    exit_code = 2


class LatticeFormatError(UnfoldError, ValueError):
    exit_code = 2


class SizeMismatch(UnfoldError, ValueError):
    exit_code = 2


class DependentGenerators(UnfoldError):
    exit_code = 4


class CommutationMismatch(UnfoldError):
    exit_code = 4


class SeamMismatchError(UnfoldError):
    exit_code = 3


class DecouplingError(UnfoldError):
    """Falha de desacoplamento; `witness` é um gerador que atravessa dois blocos."""
    exit_code = 3

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class VerificationError(UnfoldError):
    exit_code = 4

    def __init__(self, message: str, check: str = ""):
        super().__init__(message)
        self.check = check


class GateError(UnfoldError):
    exit_code = 5
