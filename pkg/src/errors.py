from typing import Optional, Tuple


class CremonaError(ValueError):
    """Erro base do laboratório (deriva de ValueError, como os erros dos processadores)"""
    pass


class DomainMismatch(CremonaError):
    """Domínios escalares ou número de variáveis incompatíveis"""
    pass


class DenominatorVanishes(CremonaError):
    """O denominador se anula no ponto avaliado"""
    pass


class NotPrime(CremonaError):
    pass


class InfiniteField(CremonaError):
    pass


class DegenerateComposition(CremonaError):
    """A substituição produziu um denominador identicamente nulo"""
    pass


class NotInverse(CremonaError):
    """As duas tuplas não são inversas uma da outra"""

    def __init__(self, message: str, coordinate: int, witness):
        super().__init__(message)
        self.coordinate = coordinate
        self.witness = witness


class SingularPoint(CremonaError):
    pass


class IndexOutOfRange(CremonaError):
    pass


class NotSymmetric(CremonaError):
    pass


class MissingIdentity(CremonaError):
    pass


class BadPrime(CremonaError):
    pass


class ReductionFailure(CremonaError):
    """A redução módulo p não preservou a estrutura (defeito interno)"""
    pass


class SizeMismatch(CremonaError):
    pass


class InvalidChunk(CremonaError):
    pass


class NotFunctional(CremonaError):
    """Duas triplas com o mesmo par (x, y) e valores diferentes"""

    def __init__(self, message: str, first: Tuple, second: Tuple):
        super().__init__(message)
        self.first = first
        self.second = second


class MissingBasepoint(CremonaError):
    pass


class SearchSpaceExceeded(CremonaError):
    pass


class WitnessTooSmall(CremonaError):
    pass


class PointCapExceeded(CremonaError):
    pass


class ExprSyntaxError(CremonaError):
    """Erro de sintaxe com o trecho (início, fim) do texto de origem"""

    def __init__(self, message: str, span: Tuple[int, int], text: Optional[str] = None):
        super().__init__(message)
        self.span = span
        self.text = text

    def pretty(self) -> str:
        """Mensagem com um marcador sob o trecho problemático"""
        if self.text is None:
            return str(self)
        start, end = self.span
        marker = " " * start + "^" * (end - start)
        return f"{self}\n  {self.text}\n  {marker}"


class ArityError(ExprSyntaxError):
    pass


class CoefficientDomainError(ExprSyntaxError):
    pass


class UnknownGenerator(ExprSyntaxError):
    pass


class InternalDefect(CremonaError):
    """Uma garantia interna foi violada (nunca deveria acontecer)"""
    pass


class OracleError(CremonaError):
    """Oráculo de grupo desconhecido ou elemento fora do grupo"""
    pass
