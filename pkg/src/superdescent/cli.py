"""Command line front end: load an algebra, run a command, print a report.

Every command builds a :class:`Report` (named sections of string cells) and
renders it as TSV or JSON; both carry the same cells, so either can be read
back with :func:`parse_tsv` / :func:`parse_json`.  Exit status: 0 success,
1 a verification failed, 2 bad input, 3 size bound exceeded.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import DEFAULT_SIZE_BOUND, NilpotentAlgebra, builtin_algebra
from .cyclotomic import CycValue, render
from .errors import (InputError, NotSuperclassFunction, NotTwistedClassFunction,
                     SizeBoundExceeded, SuperdescentError)
from .field_tower import build_tower, lcm
from .orbits import AdditiveCharacter, get_level
from .shintani import (descend_supercharacters, f_action_on_supercharacters,
                       f_invariant_characters, invariance_criterion, isometry_check,
                       lifted_characters, linear_descent_check, norm_correspondence,
                       shintani_descend)
from .superdual import (LevelLattice, coherence_check, orbit_intersection_all,
                        psi_basis_check, scalar_action_consistent, serre_dual_classes,
                        serre_trace_check, superdual_classes, transition_checks)
from .supercharacters import (gram_matrix, induced_character_oracle, normalize,
                              regular_decomposition, supercharacter_by_class_sum,
                              supercharacter_table)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3


# -- input ---------------------------------------------------------------------

@dataclass
class RunConfig:
    levels: list = field(default_factory=lambda: [1])
    size_bound: int = DEFAULT_SIZE_BOUND
    format: str = "tsv"
    slow_oracle: bool = False
    plot_dir: str = None


def load_spec(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _int_field(spec, key, default=None):
    val = spec.get(key, default)
    if not isinstance(val, int) or isinstance(val, bool):
        raise InputError(f"field {key!r} must be an integer")
    return val


def load_algebra(spec, config):
    """NilpotentAlgebra from a parsed spec dict, checked against the size bound."""
    if not isinstance(spec, dict):
        raise InputError("algebra spec must be a JSON object")
    p = _int_field(spec, "p", 2)
    d = _int_field(spec, "d", 1)
    levels = config.levels
    if spec.get("builtin") is not None:
        family = spec["builtin"]
        params = spec.get("params", [])
        if isinstance(family, dict):
            family, params = family.get("family"), family.get("params", params)
        r = None
    else:
        r = _int_field(spec, "r")
        if r < 1:
            raise InputError("r must be positive")
    tower = build_tower(p, d, levels)
    if r is None:
        algebra = builtin_algebra(family, params, tower, size_bound=config.size_bound)
    else:
        constants = [[[] for _ in range(r)] for _ in range(r)]
        for entry in spec.get("constants", []):
            try:
                i, j, k = (int(entry[key]) for key in "ijk")
                coeff = entry["coeff"]
            except (KeyError, TypeError, ValueError):
                raise InputError(f"malformed structure constant {entry!r}") from None
            if isinstance(coeff, int):
                coeff = [coeff]
            if not all(isinstance(c, int) for c in coeff):
                raise InputError(f"coefficients must be integers: {entry!r}")
            for idx in (i, j, k):
                if not 1 <= idx <= r:
                    raise InputError(f"index {idx} outside [1, {r}] in {entry!r}")
            scalar = tower.base_scalar([c % p for c in coeff])
            constants[i - 1][j - 1].append((k - 1, scalar))
        algebra = NilpotentAlgebra(tower, r, constants, name=spec.get("name"),
                                   size_bound=config.size_bound)
    top = tower.q ** (algebra.r * tower.L)
    if top > config.size_bound:
        raise SizeBoundExceeded(f"|A(q^{tower.L})|", top, config.size_bound)
    return algebra


# -- reports -------------------------------------------------------------------

@dataclass
class Section:
    name: str
    columns: list
    rows: list = field(default_factory=list)

    def add(self, *cells):
        self.rows.append([cell(c) for c in cells])


@dataclass
class Report:
    command: str
    sections: list = field(default_factory=list)
    ok: bool = True

    def section(self, name, columns):
        sec = Section(name, [str(c) for c in columns])
        self.sections.append(sec)
        return sec

    def to_dict(self):
        return {"command": self.command, "ok": self.ok,
                "sections": [{"name": s.name, "columns": s.columns, "rows": s.rows}
                             for s in self.sections]}


def cell(value):
    """Canonical string form of a report cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, CycValue):
        return render(value)
    if isinstance(value, (tuple, list)):
        return "[" + ",".join(cell(v) for v in value) + "]"
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def render_tsv(report):
    lines = [f"#command\t{report.command}", f"#ok\t{cell(report.ok)}"]
    for sec in report.sections:
        lines.append(f"##{sec.name}")
        lines.append("\t".join(sec.columns))
        lines.extend("\t".join(row) for row in sec.rows)
    return "\n".join(lines) + "\n"


def render_json(report):
    return json.dumps(report.to_dict(), indent=1) + "\n"


def parse_tsv(text):
    """Inverse of render_tsv, returning the same dict as Report.to_dict."""
    lines = text.rstrip("\n").split("\n")
    out = {"command": lines[0].split("\t")[1], "ok": lines[1].split("\t")[1] == "true",
           "sections": []}
    i = 2
    while i < len(lines):
        name = lines[i][2:]
        columns = lines[i + 1].split("\t")
        rows = []
        i += 2
        while i < len(lines) and not lines[i].startswith("##"):
            rows.append(lines[i].split("\t"))
            i += 1
        out["sections"].append({"name": name, "columns": columns, "rows": rows})
    return out


def parse_json(text):
    return json.loads(text)


# -- commands ------------------------------------------------------------------

def cmd_info(algebra, config):
    rep = Report("info")
    F = algebra.F
    desc = algebra.describe()
    sec = rep.section("algebra", ["key", "value"])
    sec.add("name", desc["name"])
    sec.add("p", F.p)
    sec.add("d", F.d)
    sec.add("q", F.q)
    sec.add("r", algebra.r)
    sec.add("nilpotency_class", algebra.nilpotency_class)
    sec.add("power_dims", algebra.power_dims)
    sec.add("ambient_degree", F.degree)
    sec.add("modulus", list(F.modulus))
    lat = LevelLattice(algebra, config.levels)
    sec = rep.section("levels", ["level", "group_order", "superclasses", "dual_orbits",
                                 "conjugacy_classes"])
    for n in lat:
        lv = lat.level(n)
        sec.add(n, lv.order, len(lv.superclasses), len(lv.dual_orbits),
                len(lv.conjugacy_partition))
    return rep


def cmd_table(algebra, config, n):
    lat = LevelLattice(algebra, config.levels)
    if n not in lat.levels:
        raise InputError(f"level {n} is not in the lattice {lat.levels}")
    level = lat.level(n)
    table = lat.table(n)
    rep = Report("table")
    mult = {xi.orbit_index: m for xi, m in regular_decomposition(level)}
    classes = level.superclasses
    sec = rep.section("superclasses", ["superclass", "representative", "size"])
    for k, cls in enumerate(classes):
        sec.add(k, cls.rep, cls.size)
    sec = rep.section("table", ["orbit_rep", "degree", "norm", "multiplicity"]
                      + [cell(cls.rep) for cls in classes])
    for xi in table:
        sec.add(xi.rep, xi.degree, xi.norm, mult[xi.orbit_index], *xi.values.values)
    if config.slow_oracle:
        ok = all(induced_character_oracle(level, xi.rep) == xi.values for xi in table)
        rep.section("oracle", ["check", "status"]).add("induced_character_oracle", ok)
        rep.ok = ok
    if config.plot_dir:
        from .plotting import plot_table
        plot_table(table, config.plot_dir)
    return rep


def cmd_shintani(algebra, config, n, m):
    if n % m:
        raise InputError(f"--to {m} must divide --from {n}")
    lat = LevelLattice(algebra, config.levels)
    if n not in lat.levels:
        raise InputError(f"level {n} is not in the lattice {lat.levels}")
    rep = Report("shintani")
    corr = norm_correspondence(algebra, n, m)
    action = f_action_on_supercharacters(algebra, n, m)
    rows = descend_supercharacters(algebra, n, m)
    top, low = lat.table(n), lat.table(m)

    sec = rep.section("correspondence", ["key", "value"])
    sec.add("from_level", n)
    sec.add("to_level", m)
    sec.add("twisted_classes", len(corr.forward))
    sec.add("conjugacy_classes", len(lat.level(m).conjugacy_partition))
    sec.add("certified_bijection", corr.certified_bijection)
    sec.add("fixed_supercharacters", len(action.fixed))
    sec.add("target_supercharacters", len(low))

    sec = rep.section("fixed", ["orbit_index", "orbit_rep", "degree", "invariant_member",
                                "descends_to", "target_rep", "target_degree"])
    image = {}
    for r in rows:
        image.setdefault(r.high_index, r.low_index)
    for k in action.fixed:
        xi = top[k]
        f = next(f for f in xi.orbit.members if algebra.at_level(f, m))
        t = low[image[k]]
        sec.add(k, xi.rep, xi.degree, f, image[k], t.rep, t.degree)

    sec = rep.section("characters", ["tau", "target_index", "lifted_index",
                                     "extension_descends", "supercharacter_descends"])
    for r in rows:
        sec.add(r.tau, r.low_index, r.high_index, r.extension_descends,
                r.supercharacter_descends)

    ext = isometry_check(algebra, n, m, basis="extensions")
    lit = isometry_check(algebra, n, m, basis="supercharacters")
    sec = rep.section("isometry", ["basis", "pairs", "failures"])
    sec.add("extensions", *ext)
    sec.add("supercharacters", *lit)
    matched = len({r.low_index for r in rows}) == len(low) == len(action.fixed)
    rep.ok = (corr.certified_bijection and matched and ext[1] == 0
              and all(r.extension_descends for r in rows))
    if config.plot_dir:
        from .plotting import plot_class_sizes
        fpart = lat.level(n).twisted_partition(m)
        conj = lat.level(m).conjugacy_partition
        plot_class_sizes(fpart.sizes, [conj.sizes[c] for c in corr.forward],
                         config.plot_dir, f"norm_class_sizes_{n}_{m}.png")
    return rep


class _Checks:
    def __init__(self, section):
        self.section = section
        self.ok = True

    def record(self, name, where, passed, witness=""):
        passed = bool(passed)
        self.ok &= passed
        self.section.add(name, where, "pass" if passed else "fail", witness)

    def run(self, name, where, fn):
        try:
            res = fn()
        except SuperdescentError as exc:
            self.record(name, where, False, f"{type(exc).__name__}: {exc}")
            return
        if isinstance(res, tuple):
            self.record(name, where, res[0], res[1])
        else:
            self.record(name, where, res)


def _formula_agreement(level, slow):
    table = supercharacter_table(level)
    for xi in table:
        left = len(level.left_orbit(xi.rep))
        for k, cls in enumerate(level.superclasses):
            if supercharacter_by_class_sum(level, xi.rep, cls, left) != xi.values.values[k]:
                return False, f"orbit {xi.rep} superclass {cls.rep}"
        if slow:
            for side in ("left", "right"):
                if induced_character_oracle(level, xi.rep, side) != xi.values:
                    return False, f"{side} induction for orbit {xi.rep}"
    return True, ""


def _orthogonality(level):
    table = list(supercharacter_table(level))
    gram = gram_matrix(level)
    for i, a in enumerate(table):
        for j, b in enumerate(table):
            want = a.norm if i == j else 0
            if gram[i][j] != want:
                return False, f"<{a.rep}, {b.rep}> = {render(gram[i][j])}"
    return True, ""


def _normalised(level):
    for xi in supercharacter_table(level):
        normalize(xi, level)
    return True


def _extension_descent(algebra, n, m):
    bad = [r.tau for r in descend_supercharacters(algebra, n, m) if not r.extension_descends]
    return not bad, cell(bad) if bad else ""


def _dual_lift(algebra, n, m):
    return lifted_characters(algebra, n, m) == f_invariant_characters(algebra, n, m)


def _invariance(algebra, n, m):
    rows = invariance_criterion(algebra, n, m)
    bad = [k for k, (a, b) in enumerate(rows) if a != b]
    return not bad, cell(bad) if bad else ""


def _linear_descent(algebra, n, m):
    bad = [t for t in get_level(algebra, m).elements
           if not linear_descent_check(algebra, AdditiveCharacter(m, t), n)]
    return not bad, cell(bad) if bad else ""


def _isometry(algebra, n, m):
    checked, failures = isometry_check(algebra, n, m, basis="extensions")
    return failures == 0, f"{failures}/{checked}" if failures else ""


def _literal_descent(algebra, n, m):
    """How many F-fixed supercharacters are constant on twisted classes."""
    action = f_action_on_supercharacters(algebra, n, m)
    table = supercharacter_table(get_level(algebra, n))
    good = 0
    for k in action.fixed:
        try:
            shintani_descend(algebra, table[k].values, m)
            good += 1
        except (NotTwistedClassFunction, NotSuperclassFunction):
            pass
    return good, len(action.fixed)


def cmd_verify(algebra, config):
    lat = LevelLattice(algebra, config.levels)
    rep = Report("verify")
    checks = _Checks(rep.section("checks", ["check", "where", "status", "witness"]))
    checks.record("associative_and_nilpotent", "load", True)
    for n in lat:
        lv = lat.level(n)
        where = f"n={n}"
        checks.run("superclass_partition", where,
                   lambda: sum(lv.superclass_partition.sizes) == lv.order)
        checks.run("orbit_count_matches_superclasses", where,
                   lambda: len(lv.dual_orbits) == len(lv.superclasses))
        checks.run("formula_agreement", where,
                   lambda: _formula_agreement(lv, config.slow_oracle))
        checks.run("orthogonality", where, lambda: _orthogonality(lv))
        checks.run("regular_decomposition", where, lambda: bool(regular_decomposition(lv)))
        checks.run("normalised_values", where, lambda: _normalised(lv))
    for m, n in lat.pairs():
        where = f"n={n},m={m}"
        checks.run("norm_bijection", where,
                   lambda: norm_correspondence(algebra, n, m).certified_bijection)
        checks.run("frobenius_action", where,
                   lambda: bool(f_action_on_supercharacters(algebra, n, m)))
        checks.run("invariance_criterion", where, lambda: _invariance(algebra, n, m))
        checks.run("dual_lift_is_fixed_set", where, lambda: _dual_lift(algebra, n, m))
        checks.run("linear_descent", where, lambda: _linear_descent(algebra, n, m))
        checks.run("extension_descent", where, lambda: _extension_descent(algebra, n, m))
        checks.run("isometry", where, lambda: _isometry(algebra, n, m))
    checks.run("transition_coherence", "lattice",
               lambda: all(ok for *_, ok in coherence_check(lat)))
    checks.run("serre_trace_relation", "lattice", lambda: serre_trace_check(lat))
    checks.run("scalar_action", "lattice", lambda: scalar_action_consistent(lat)[1])
    checks.run("psi_basis", "lattice", lambda: psi_basis_check(lat))
    checks.run("orbit_intersection", "lattice", lambda: orbit_intersection_all(lat))

    # informational: not part of the pass/fail verdict
    sec = rep.section("observations", ["observation", "where", "value"])
    for m, n in lat.pairs():
        good, total = _literal_descent(algebra, n, m)
        sec.add("fixed_supercharacters_constant_on_twisted_classes", f"n={n},m={m}",
                f"{good}/{total}")
    rep.ok = checks.ok
    return rep


def cmd_superdual(algebra, config):
    lat = LevelLattice(algebra, config.levels)
    rep = Report("superdual")
    classes = superdual_classes(lat)
    sec = rep.section("superdual_classes", ["class", "minimal_level", "members", "degrees"])
    for k, cls in enumerate(classes):
        members = [f"{n}:{cell(lat.table(n)[i].rep)}" for n, i in sorted(cls.members.items())]
        degrees = [f"{n}:{render(d)}" for n, d in sorted(cls.degrees.items())]
        sec.add(k, cls.minimal_level, members, degrees)
    sec = rep.section("superdual_counts", ["minimal_level", "classes"])
    for n in lat:
        sec.add(n, sum(c.minimal_level == n for c in classes))

    serre = serre_dual_classes(lat)
    sec = rep.section("serre_classes", ["coords", "minimal_level", "levels"])
    for cls in serre:
        sec.add(cls.coords, cls.minimal_level, cls.levels)
    sec = rep.section("serre_counts", ["minimal_level", "classes"])
    for n in lat:
        sec.add(n, sum(c.minimal_level == n for c in serre))

    sec = rep.section("transitions", ["from", "to", "orbit", "degree_after",
                                      "pullback_is_extension", "pullback_is_supercharacter"])
    for m, n in lat.pairs():
        for t in transition_checks(lat, m, n):
            sec.add(m, n, t.orbit, t.degree, t.pullback_is_extension,
                    t.pullback_is_supercharacter)

    sec = rep.section("checks", ["check", "status"])
    results = [("coherence", all(ok for *_, ok in coherence_check(lat))),
               ("serre_trace_relation", serre_trace_check(lat)),
               ("scalar_action", scalar_action_consistent(lat)[1]),
               ("psi_basis", psi_basis_check(lat)),
               ("orbit_intersection", orbit_intersection_all(lat))]
    for name, ok in results:
        sec.add(name, ok)
    rep.ok = all(ok for _, ok in results)
    if config.plot_dir:
        from .plotting import plot_superdual
        plot_superdual(classes, lat.levels, config.plot_dir)
    return rep


# -- entry point -----------------------------------------------------------------

def _levels(text):
    try:
        levels = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad level list {text!r}") from None
    if not levels or min(levels) < 1:
        raise argparse.ArgumentTypeError("levels must be positive integers")
    return levels


def build_parser():
    parser = argparse.ArgumentParser(
        prog="superdescent",
        description="Supercharacter tables of algebra groups and Shintani descent.")
    parser.add_argument("command", choices=["info", "table", "shintani", "verify", "superdual"])
    parser.add_argument("--spec", required=True, help="algebra spec (JSON)")
    parser.add_argument("--levels", type=_levels, default=[1], help="comma separated, e.g. 1,2")
    parser.add_argument("--level", type=int, help="level for 'table' (default: largest)")
    parser.add_argument("--from", dest="from_level", type=int,
                        help="upper level for 'shintani' (default: largest)")
    parser.add_argument("--to", dest="to_level", type=int, default=1,
                        help="lower level for 'shintani' (default 1)")
    parser.add_argument("--format", choices=["tsv", "json"], default="tsv")
    parser.add_argument("--size-bound", type=int, default=DEFAULT_SIZE_BOUND)
    parser.add_argument("--slow-oracle", action="store_true",
                        help="also compare against literal induction")
    parser.add_argument("--plot", metavar="DIR", help="write figures to DIR")
    return parser


def run(argv):
    """Returns (exit code, rendered output or error text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(levels=args.levels, size_bound=args.size_bound, format=args.format,
                       slow_oracle=args.slow_oracle, plot_dir=args.plot)
    try:
        algebra = load_algebra(load_spec(args.spec), config)
        top = lcm(*config.levels)
        if args.command == "info":
            report = cmd_info(algebra, config)
        elif args.command == "table":
            report = cmd_table(algebra, config, args.level or top)
        elif args.command == "shintani":
            report = cmd_shintani(algebra, config, args.from_level or top, args.to_level)
        elif args.command == "verify":
            report = cmd_verify(algebra, config)
        else:
            report = cmd_superdual(algebra, config)
    except SizeBoundExceeded as exc:
        return EXIT_SIZE, f"size bound: {exc}\n"
    except InputError as exc:
        return EXIT_INPUT, f"input error: {type(exc).__name__}: {exc}\n"
    except SuperdescentError as exc:
        return EXIT_FAIL, f"verification error: {type(exc).__name__}: {exc}\n"
    text = render_json(report) if config.format == "json" else render_tsv(report)
    return (EXIT_OK if report.ok else EXIT_FAIL), text


def main(argv=None):
    code, text = run(sys.argv[1:] if argv is None else argv)
    (sys.stdout if code in (EXIT_OK, EXIT_FAIL) else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
