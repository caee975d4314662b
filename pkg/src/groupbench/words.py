"""Freely reduced words over a signed letter alphabet.

A letter is a pair ``(symbol, sign)`` with ``sign`` either ``+1`` or ``-1``;
a word is a tuple of letters.  Words are kept freely reduced: no letter is
ever adjacent to its own inverse.  The text syntax uses one lowercase
character per positive letter and the uppercase character for its inverse,
with whitespace ignored:

>>> parse_word("taT A")
(('t', 1), ('a', 1), ('t', -1), ('a', -1))
>>> word_str((('b', 1), ('a', -1)))
'bA'
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]

EMPTY: Word = ()


def letter(symbol: str, sign: int = 1) -> Letter:
    if sign not in (1, -1):
        raise ValueError(f"letter sign must be +1 or -1, got {sign!r}")
    return (symbol, sign)


def inverse_letter(x: Letter) -> Letter:
    return (x[0], -x[1])


def parse_word(text: str) -> Word:
    """Parse compact letter syntax into an (unreduced) letter tuple.

    Lowercase characters are positive letters, uppercase their inverses;
    whitespace is ignored and ``1`` spells the empty word.  The parse is
    not reduced, so spellings such as ``"aA"`` survive round trips
    through :func:`word_str`.
    """
    out = []
    for ch in text:
        if ch.isspace() or ch == "1":
            continue
        if ch.isalpha():
            out.append((ch.lower(), 1 if ch.islower() else -1))
        else:
            raise ValueError(f"bad character {ch!r} in word {text!r}")
    return tuple(out)


def word_str(word: Sequence[Letter]) -> str:
    return "".join(sym if sign == 1 else sym.upper() for sym, sign in word)


def free_reduce(letters: Iterable[Letter]) -> Word:
    """Freely reduce a letter sequence in a single stack pass.

    >>> word_str(free_reduce(parse_word("abBA b")))
    'b'
    """
    stack: list[Letter] = []
    for x in letters:
        if stack and stack[-1][0] == x[0] and stack[-1][1] == -x[1]:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def is_reduced(word: Sequence[Letter]) -> bool:
    return all(
        not (word[i][0] == word[i + 1][0] and word[i][1] == -word[i + 1][1])
        for i in range(len(word) - 1)
    )


def concat(u: Sequence[Letter], v: Sequence[Letter]) -> Word:
    """Freely reduced product of two reduced words."""
    stack = list(u)
    for x in v:
        if stack and stack[-1][0] == x[0] and stack[-1][1] == -x[1]:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def invert(word: Sequence[Letter]) -> Word:
    return tuple((sym, -sign) for sym, sign in reversed(word))


def letter_count(word: Sequence[Letter], symbol: str) -> int:
    return sum(1 for sym, _ in word if sym == symbol)


def twist(word: Sequence[Letter], k: int = 1) -> Word:
    """Conjugate a word in a, b through the stable letter: t^-k w t^k.

    One application substitutes a -> b^-1 a (and a^-1 -> a^-1 b) while
    fixing b; negative k applies the inverse substitution a -> b a.  The
    substitution is iterated |k| times and reduced; no a-letter is ever
    cancelled, so the a-letter count is preserved.

    >>> word_str(twist(parse_word("a")))
    'Ba'
    >>> word_str(twist(parse_word("a"), -1))
    'ba'
    """
    current = tuple(word)
    step = 1 if k >= 0 else -1
    for _ in range(abs(k)):
        stack: list[Letter] = []
        for sym, sign in current:
            if sym == "a":
                if sign == 1:
                    pieces = (("b", -step), ("a", 1))
                else:
                    pieces = (("a", -1), ("b", step))
            else:
                pieces = ((sym, sign),)
            for x in pieces:
                if stack and stack[-1][0] == x[0] and stack[-1][1] == -x[1]:
                    stack.pop()
                else:
                    stack.append(x)
        current = tuple(stack)
    return current
