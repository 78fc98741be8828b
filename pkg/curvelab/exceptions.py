"""Исключения curvelab.

Все ошибки библиотеки наследуют CurvelabError: раннер наборов проверок
ловит именно его и записывает проверку как проваленную с текстом ошибки.
"""

from __future__ import annotations


class CurvelabError(Exception):
    """Любая ошибка вычислений curvelab. message можно показать в отчёте."""


# ── Поля ──

class NonPrimeP(CurvelabError):
    """Характеристика p не простая."""


class ReducibleModulus(CurvelabError):
    """Заданный модуль не унитарный, не той степени или приводим над GF(p)."""


class DivisionByZero(CurvelabError, ZeroDivisionError):
    """Деление на ноль в поле."""


class ContextMismatch(CurvelabError):
    """Операнды живут в разных полях."""


class NonDividingDegree(CurvelabError):
    """Степень подполя не делит степень объемлющего поля."""


class FieldTooSmall(CurvelabError):
    """Объемлющее поле не содержит нужного подполя."""


# ── Многочлены, каталог, группы ──

class MissingParameter(CurvelabError):
    """Многочлен содержит Λ, а значение λ не передано."""


class ZeroDivisor(CurvelabError):
    """Деление многочлена на нулевой многочлен."""


class InvalidParameters(CurvelabError):
    """Параметры не подходят для кривой, группы или набора проверок."""


class InexactDivision(CurvelabError):
    """Частное, которое обязано быть многочленом, не делится нацело."""


class DegreeMismatch(CurvelabError):
    """Степени сравниваемых форм не совпадают."""


class SearchSpaceExceeded(CurvelabError):
    """Перебор кандидатов превысил настроенный потолок."""


class CapExceeded(CurvelabError):
    """Размерность пространства форм больше настроенного потолка."""


# ── Геометрия ──

class PointNotOnCurve(CurvelabError):
    """Точка не лежит на кривой."""


class LineIsComponent(CurvelabError):
    """Прямая является компонентой кривой: ограничение тождественно ноль."""


class PointNotOnBoth(CurvelabError):
    """Точка не лежит одновременно на кривой и на прямой."""


# ── Раннер ──

class UnknownSuite(CurvelabError):
    """Неизвестный идентификатор набора проверок."""
