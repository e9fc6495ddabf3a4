import math
import os
import re
import yaml
from dataclasses import asdict, dataclass, field

from tsbvp.expr import ExprError, parse, variables
from tsbvp.timescale import build_timescale
from tsbvp.utils.registry import TIMESCALE_REGISTRY


class ConfigError(ValueError):
    """Invalid run configuration, positioned by line and key when known."""

    def __init__(self, message, line=None, key=None):
        self.line = line
        self.key = key
        prefix = ''
        if line is not None:
            prefix += f'line {line}: '
        if key is not None:
            prefix += f'{key}: '
        super().__init__(prefix + message)


@dataclass
class ProblemOptions:
    p: float = None
    T: float = None
    eta: float = None
    f: str = None
    h: str = '0'


@dataclass
class TimeScaleOptions:
    kind: str = 'interval'
    spec: str = None
    resolution: float = 0.01


@dataclass
class SolverOptions:
    tol: float = 1e-10
    max_iter: int = 500
    damping: float = 1.0
    init: str = '0'
    workers: int = 1
    print_freq: int = 100


@dataclass
class CheckOptions:
    a: float = None
    b: float = None
    levels: tuple = None
    a0: float = 1.0
    ratio: float = 0.5
    k_max: int = 8
    samples: int = 10001
    refine: bool = False


@dataclass
class RunConfig:
    """Parsed run configuration, one dataclass per config section."""
    problem: ProblemOptions = field(default_factory=ProblemOptions)
    timescale: TimeScaleOptions = field(default_factory=TimeScaleOptions)
    solver: SolverOptions = field(default_factory=SolverOptions)
    check: CheckOptions = field(default_factory=CheckOptions)

    def to_dict(self):
        return asdict(self)


def _to_float(value):
    if isinstance(value, bool):
        raise ValueError(f'expected a number, got {value!r}')
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ValueError(f'expected a number, got {value!r}') from None
    if not math.isfinite(number):
        raise ValueError(f'expected a finite number, got {value!r}')
    return number


def _to_int(value):
    if isinstance(value, bool) or not re.fullmatch(r'[+-]?\d+', str(value).strip()):
        raise ValueError(f'expected an integer, got {value!r}')
    return int(str(value).strip())


def _to_bool(value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text not in ('true', 'false'):
        raise ValueError(f'expected true or false, got {value!r}')
    return text == 'true'


def _to_float_list(value):
    items = list(value) if isinstance(value, (list, tuple)) else str(value).split(',')
    if any(str(v).strip() == '' for v in items):
        raise ValueError(f'expected a comma-separated list of numbers, got {value!r}')
    return tuple(_to_float(v) for v in items)


def _to_text(value):
    if isinstance(value, bool) or value is None:
        raise ValueError(f'expected text, got {value!r}')
    text = str(value).strip()
    if not text:
        raise ValueError('empty value')
    return text


# section -> key -> converter
SCHEMA = {
    'problem': {
        'p': _to_float,
        'T': _to_float,
        'eta': _to_float,
        'f': _to_text,
        'h': _to_text
    },
    'timescale': {
        'kind': _to_text,
        'spec': _to_text,
        'resolution': _to_float
    },
    'solver': {
        'tol': _to_float,
        'max_iter': _to_int,
        'damping': _to_float,
        'init': _to_text,
        'workers': _to_int,
        'print_freq': _to_int
    },
    'check': {
        'a': _to_float,
        'b': _to_float,
        'levels': _to_float_list,
        'a0': _to_float,
        'ratio': _to_float,
        'k_max': _to_int,
        'samples': _to_int,
        'refine': _to_bool
    },
}
REQUIRED = (('problem', 'p'), ('problem', 'T'), ('problem', 'eta'), ('problem', 'f'))

_SECTION_RE = re.compile(r'\[\s*([A-Za-z_]\w*)\s*\]')
_ENTRY_RE = re.compile(r'([A-Za-z_]\w*)\s*=(.*)')


def _build(entries, lines):
    """Convert raw section entries into a validated RunConfig."""
    cfg = RunConfig()
    for (section, key), raw in entries.items():
        line = lines.get((section, key))
        try:
            value = SCHEMA[section][key](raw)
        except ValueError as error:
            raise ConfigError(str(error), line, key) from None
        setattr(getattr(cfg, section), key, value)
    for section, key in REQUIRED:
        if (section, key) not in entries:
            raise ConfigError(f'missing required key "{key}" in section [{section}]', key=key)
    validate_config(cfg, lines)
    return cfg


def parse_config(text):
    """Parse the sectioned key-value configuration format.

    Example::

        [problem]
        p = 2
        T = 1
        eta = 0.5
        f = 1          # comments start with '#'
        [timescale]
        kind = interval
        resolution = 0.001

    Unknown sections and keys are errors.

    Args:
        text (str): Configuration text.

    Returns:
        RunConfig: Configuration with defaults filled in.

    Raises:
        ConfigError: Syntax error, unknown/duplicate/missing key or a violated
            constraint, with the line number when known.
    """
    entries = {}
    lines = {}
    section = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split('#', 1)[0].strip()
        if not line:
            continue
        match = _SECTION_RE.fullmatch(line)
        if match:
            section = match.group(1)
            if section not in SCHEMA:
                raise ConfigError(f'unknown section [{section}]; expected one of {list(SCHEMA)}', lineno)
            continue
        match = _ENTRY_RE.fullmatch(line)
        if match is None:
            raise ConfigError(f'expected "[section]" or "key = value", got "{line}"', lineno)
        key, value = match.group(1), match.group(2).strip()
        if section is None:
            raise ConfigError('entry before the first [section] header', lineno, key)
        if key not in SCHEMA[section]:
            raise ConfigError(f'unknown key in section [{section}]; expected one of {list(SCHEMA[section])}',
                              lineno, key)
        if (section, key) in entries:
            raise ConfigError(f'duplicate key (first set on line {lines[(section, key)]})', lineno, key)
        entries[(section, key)] = value
        lines[(section, key)] = lineno
    return _build(entries, lines)


def parse_yaml_config(text):
    """Parse a YAML configuration with the same sections and keys."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as error:
        mark = getattr(error, 'problem_mark', None)
        raise ConfigError(f'invalid YAML: {error}', None if mark is None else mark.line + 1) from None
    if not isinstance(data, dict):
        raise ConfigError('a YAML configuration must be a mapping of sections')
    entries = {}
    for section, content in data.items():
        if section not in SCHEMA:
            raise ConfigError(f'unknown section [{section}]; expected one of {list(SCHEMA)}')
        if not isinstance(content, dict):
            raise ConfigError(f'section [{section}] must be a mapping')
        for key, value in content.items():
            if key not in SCHEMA[section]:
                raise ConfigError(f'unknown key in section [{section}]; expected one of {list(SCHEMA[section])}',
                                  key=key)
            entries[(section, key)] = value
    return _build(entries, {})


def load_config(path):
    """Read a configuration file; ``.yml``/``.yaml`` files are read as YAML."""
    with open(path, 'r') as f:
        text = f.read()
    if os.path.splitext(path)[1].lower() in ('.yml', '.yaml'):
        return parse_yaml_config(text)
    return parse_config(text)


def _parse_expression(text, allowed, key, line):
    try:
        expression = parse(text)
    except ExprError as error:
        raise ConfigError(str(error), line, key) from None
    extra = variables(expression) - set(allowed)
    if extra:
        raise ConfigError(f'"{text}" uses {sorted(extra)}; only {list(allowed)} allowed', line, key)
    return expression


def validate_config(cfg, lines=None):
    """Check the cross-field constraints of a configuration.

    Raises:
        ConfigError: The first violated constraint.
    """
    lines = lines or {}

    def fail(message, section, key):
        raise ConfigError(message, lines.get((section, key)), key)

    pb, ts, sv, ck = cfg.problem, cfg.timescale, cfg.solver, cfg.check
    if not pb.p > 1:
        fail(f'must be > 1, got {pb.p!r}', 'problem', 'p')
    if not pb.T > 0:
        fail(f'must be > 0, got {pb.T!r}', 'problem', 'T')
    if not 0 < pb.eta < pb.T:
        fail(f'eta = {pb.eta!r} must satisfy 0 < eta < T (T = {pb.T!r})', 'problem', 'eta')
    _parse_expression(pb.f, ('u', ), 'f', lines.get(('problem', 'f')))
    _parse_expression(pb.h, ('t', ), 'h', lines.get(('problem', 'h')))
    _parse_expression(sv.init, ('t', ), 'init', lines.get(('solver', 'init')))

    if ts.kind not in TIMESCALE_REGISTRY:
        fail(f'unknown kind "{ts.kind}"; expected one of {sorted(TIMESCALE_REGISTRY.keys())}', 'timescale', 'kind')
    if not ts.resolution > 0:
        fail(f'must be > 0, got {ts.resolution!r}', 'timescale', 'resolution')
    try:
        timescale = build_timescale({'type': ts.kind, 'T': pb.T, 'spec': ts.spec})
    except ValueError as error:
        fail(str(error), 'timescale', 'spec' if ts.spec is not None else 'kind')
    if not timescale.contains(pb.eta):
        fail(f'eta = {pb.eta!r} is not a point of the time scale {timescale}', 'problem', 'eta')

    if not sv.tol > 0:
        fail(f'must be > 0, got {sv.tol!r}', 'solver', 'tol')
    if not sv.max_iter >= 1:
        fail(f'must be >= 1, got {sv.max_iter}', 'solver', 'max_iter')
    if not 0 < sv.damping <= 1:
        fail(f'must satisfy 0 < damping <= 1, got {sv.damping!r}', 'solver', 'damping')
    if not sv.workers >= 1:
        fail(f'must be >= 1, got {sv.workers}', 'solver', 'workers')
    if not sv.print_freq >= 0:
        fail(f'must be >= 0, got {sv.print_freq}', 'solver', 'print_freq')

    for key in ('a', 'b'):
        value = getattr(ck, key)
        if value is not None and not value > 0:
            fail(f'must be > 0, got {value!r}', 'check', key)
    if ck.levels is not None:
        if any(not v > 0 for v in ck.levels):
            fail(f'levels must be positive, got {list(ck.levels)}', 'check', 'levels')
        if any(b <= a for a, b in zip(ck.levels, ck.levels[1:])):
            fail(f'levels must be strictly increasing, got {list(ck.levels)}', 'check', 'levels')
    if not ck.a0 > 0:
        fail(f'must be > 0, got {ck.a0!r}', 'check', 'a0')
    if not 0 < ck.ratio < 1:
        fail(f'must satisfy 0 < ratio < 1, got {ck.ratio!r}', 'check', 'ratio')
    if not ck.k_max >= 1:
        fail(f'must be >= 1, got {ck.k_max}', 'check', 'k_max')
    if not ck.samples >= 2:
        fail(f'must be >= 2, got {ck.samples}', 'check', 'samples')
    return cfg


def _format_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ', '.join(repr(v) for v in value)
    return str(value)


def print_config(cfg):
    """Canonical text of a configuration.

    Every set key is written, floats with ``repr`` and expressions verbatim,
    so that the output parses back to an equal RunConfig and prints again
    byte for byte.
    """
    out = []
    for section in SCHEMA:
        if out:
            out.append('')
        out.append(f'[{section}]')
        options = getattr(cfg, section)
        for key in SCHEMA[section]:
            value = getattr(options, key)
            if value is not None:
                out.append(f'{key} = {_format_value(value)}')
    return '\n'.join(out) + '\n'

