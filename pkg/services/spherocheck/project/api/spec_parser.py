# services/spherocheck/project/api/spec_parser.py

"""
Recursive-descent parser for pair specs:

    spec       := algebras ":" rep ( "[" centers "]" )?
    algebras   := simple ( "+" simple )* | "0"
    simple     := ( "sl" | "so" | "sp" ) "(" nat ")" | "g2" | "e6"
    rep        := summand ( "++" summand )*
    summand    := factor_rep ( "*" factor_rep )*
    factor_rep := "(" weight ")" | weight
    weight     := "1" | term ( "+" term )*      term := nat? "w" nat
    centers    := center ( "," center )*
    center     := "h1" | "h(" int ( "," int )* ")"

Matrix sizes name the classical algebras: sl(n) = A_(n-1), so(2n+1) = B_n,
sp(2n) = C_n, so(2n) = D_n. sp(2) is read as sl(2); so(n) needs n >= 5.
"""

import re

from project.api.exceptions import SpecArityError, SpecSyntaxError
from project.api.models import PairSpec

TOKEN = re.compile(r'\s*(?:(?P<num>-?\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>\+\+|[-+*:,()\[\]~]))')


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        match = TOKEN.match(text, pos)
        if match is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise SpecSyntaxError('unexpected character {!r}'.format(text[start]), start)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(('end', '', len(text)))
    return tokens


class SpecParser(object):

    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def error(self, message, position=None):
        return SpecSyntaxError(message, self.current[2] if position is None else position)

    def peek(self, value):
        return self.current[1] == value and self.current[0] != 'end'

    def accept(self, value):
        if self.peek(value):
            self.index += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            found = self.current[1] or 'end of input'
            raise self.error('expected {!r}, found {!r}'.format(value, found))

    def natural(self):
        kind, value, position = self.current
        if kind != 'num' or value.startswith('-'):
            raise self.error('expected a natural number')
        self.index += 1
        return int(value), position

    def integer(self):
        kind, value, _ = self.current
        if kind != 'num':
            raise self.error('expected an integer')
        self.index += 1
        return int(value)

    def parse(self):
        factors = self.algebras()
        self.expect(':')
        summands = self.rep(factors)
        center = ()
        if self.accept('['):
            center = self.centers(len(summands))
            self.expect(']')
        if self.current[0] != 'end':
            raise self.error('trailing input {!r}'.format(self.current[1]))
        return PairSpec(tuple(factors), tuple(summands), center)

    def algebras(self):
        if self.accept('0'):
            return []
        factors = [self.simple()]
        while self.accept('+'):
            factors.append(self.simple())
        return factors

    def simple(self):
        kind, name, position = self.current
        if kind != 'name':
            raise self.error('expected a simple Lie algebra')
        self.index += 1
        name = name.lower()
        if name == 'g2':
            return ('G2', 2)
        if name == 'e6':
            return ('E6', 6)
        if name not in ('sl', 'so', 'sp'):
            raise self.error('unknown algebra {!r}'.format(name), position)
        self.expect('(')
        n, size_position = self.natural()
        self.expect(')')
        if name == 'sl':
            if n < 2:
                raise self.error('sl(n) needs n >= 2', size_position)
            return ('A', n - 1)
        if name == 'sp':
            if n < 2 or n % 2:
                raise self.error('sp(n) needs an even n >= 2', size_position)
            return ('A', 1) if n == 2 else ('C', n // 2)
        if n < 5:
            raise self.error('so(n) needs n >= 5; write so(3), so(4) as sl(2) forms', size_position)
        return ('B', n // 2) if n % 2 else ('D', n // 2)

    def rep(self, factors):
        summands = [self.summand(factors)]
        while self.accept('++'):
            summands.append(self.summand(factors))
        return summands

    def summand(self, factors):
        position = self.current[2]
        if not factors:
            if not self.accept('1'):
                raise self.error('the zero algebra acts on "1"')
            return ()
        word = [self.factor_rep()]
        while self.accept('*'):
            word.append(self.factor_rep())
        if len(word) != len(factors):
            raise SpecArityError('col {}: tensor word names {} factors, the algebra has {}'.format(
                position, len(word), len(factors)))
        return tuple(_weight(terms, rank) for terms, (_, rank) in zip(word, factors))

    def factor_rep(self):
        if self.accept('('):
            terms = self.weight()
            self.expect(')')
            return terms
        return self.weight()

    def weight(self):
        if self.peek('1') and not self.tokens[self.index + 1][1].lower().startswith('w'):
            self.index += 1
            return []
        terms = [self.term()]
        while self.accept('+'):
            terms.append(self.term())
        return terms

    def term(self):
        coefficient = 1
        position = self.current[2]
        if self.current[0] == 'num':
            coefficient, _ = self.natural()
        kind, value, name_position = self.current
        match = re.fullmatch(r'w(\d+)', value.lower()) if kind == 'name' else None
        if match is None:
            raise self.error('expected a fundamental weight wN')
        self.index += 1
        index = int(match.group(1))
        if index < 1:
            raise self.error('weights are numbered from w1', name_position)
        return coefficient, index, position

    def centers(self, count):
        out = [self.center(count)]
        while self.accept(','):
            out.append(self.center(count))
        return tuple(out)

    def center(self, count):
        kind, value, position = self.current
        if value == 'h1':
            self.index += 1
            return (1,) * count
        if value != 'h':
            raise self.error('expected h1 or h(...)')
        self.index += 1
        self.expect('(')
        values = [self.integer()]
        while self.accept(','):
            values.append(self.integer())
        self.expect(')')
        if len(values) != count:
            raise SpecArityError('col {}: center generator has {} scalings for {} summands'.format(
                position, len(values), count))
        return tuple(values)


def _weight(terms, rank):
    weight = [0] * rank
    for coefficient, index, position in terms:
        if index > rank:
            raise SpecSyntaxError('w{} exceeds the rank {}'.format(index, rank), position)
        weight[index - 1] += coefficient
    return tuple(weight)


def parse_pair_spec(text):
    return SpecParser(text).parse()


def format_pair_spec(spec):
    return spec.to_text()
