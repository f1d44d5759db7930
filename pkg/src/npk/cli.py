"""``npk`` command line: exact n-potent computations on JSON files.

Exit codes: 0 success, 1 parse error, 2 not an n-potent, 3 field violation,
4 verification failure.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import formats as fmt
from .cyclofield import conductor_normalize, zeta
from .errors import NPKError, NotNPotentError, ParseError, VerificationError
from .exactmat import is_npotent
from .kgroup import class_of, group_structure, representative
from .nhom import apply_entrywise, first_nhom_failure, scalar_nhom, transport_witness
from .npotent import (
    complementary,
    decompose,
    quadripotent_split_q4,
    random_npotent,
    random_rank_pattern,
    recompose,
    tripotent_split,
)
from .regression import run_checks
from .witness import (
    EquivWitness,
    compose_transitive,
    from_similarity,
    intertwiner,
    normalize_algebraic,
    stable_similarity,
)


def _emit(obj, args) -> None:
    print(fmt.dump_json(obj, args.pretty))


def _matrix(path):
    return fmt.matrix_from_json(fmt.load_json(path))


def _witness(path):
    return fmt.witness_from_json(fmt.load_json(path))


def cmd_verify(args) -> int:
    e = _matrix(args.matrix)
    ok = e.is_square and is_npotent(e, args.n)
    print(f"n-potent: {'true' if ok else 'false'}")
    return 0 if ok else NotNPotentError.exit_code


def cmd_decompose(args) -> int:
    _emit(fmt.partition_to_json(decompose(_matrix(args.matrix), args.n)), args)
    return 0


def cmd_recompose(args) -> int:
    p = fmt.partition_from_json(fmt.load_json(args.partition))
    bad = p.failures()
    if bad:
        raise VerificationError(bad[0], f"not an n-partition of unity: {bad[0]}")
    _emit(fmt.matrix_to_json(recompose(p)), args)
    return 0


def cmd_complement(args) -> int:
    _emit(fmt.matrix_to_json(complementary(_matrix(args.matrix), args.n)), args)
    return 0


def cmd_split3(args) -> int:
    e1, e2 = tripotent_split(_matrix(args.matrix))
    _emit({"e1": fmt.matrix_to_json(e1), "e2": fmt.matrix_to_json(e2)}, args)
    return 0


def cmd_split4(args) -> int:
    e1, e23 = quadripotent_split_q4(_matrix(args.matrix))
    _emit({"e1": fmt.matrix_to_json(e1), "e23": fmt.matrix_to_json(e23)}, args)
    return 0


def cmd_witness(args) -> int:
    action = args.action
    if action == "verify":
        w = _witness(args.inputs[0])
        bad = w.failures()
        if bad:
            print(f"FAILED: {bad[0]}")
            return VerificationError.exit_code
        print("VERIFIED")
        return 0
    if action == "normalize":
        w = _witness(args.inputs[0])
        out = normalize_algebraic(w.e, w.f, w.a, w.b, w.n)
    elif action == "stable":
        w = _witness(args.inputs[0])
        if not isinstance(w, EquivWitness):
            raise ParseError("stable similarity needs an algebraic witness")
        out = stable_similarity(w)
    elif action == "from-similarity":
        e, z = _matrix(args.inputs[0]), _matrix(args.inputs[1])
        out = from_similarity(e, z, _need_n(args))
    elif action == "intertwine":
        e, f = _matrix(args.inputs[0]), _matrix(args.inputs[1])
        v, invertible, sim = intertwiner(e, f, _need_n(args))
        res = {"v": fmt.matrix_to_json(v), "invertible": invertible}
        if sim is not None:
            res["similarity"] = fmt.witness_to_json(sim)
        _emit(res, args)
        return 0
    else:  # compose
        out = compose_transitive(_witness(args.inputs[0]), _witness(args.inputs[1]))
    _emit(fmt.witness_to_json(out), args)
    return 0


_WITNESS_ARITY = {"verify": 1, "normalize": 1, "stable": 1, "from-similarity": 2, "intertwine": 2, "compose": 2}


def _need_n(args) -> int:
    if args.n is None:
        raise ParseError("--n is required for this command")
    return args.n


def cmd_class(args) -> int:
    x = class_of(_matrix(args.matrix), args.n, args.field)
    _emit({"orbits": x.orbits.to_list(), "values": list(x.values)}, args)
    return 0


def cmd_group(args) -> int:
    g = group_structure(args.n, args.field)
    if args.pretty:
        print(f"K0^{g.n}(Q(zeta_{g.base_order})) = {g.render(unicode=True)}")
        for orbit, idx in g.factors:
            print(f"  orbit {list(orbit)}: {'' if idx == 1 else idx}Z")
    else:
        print(g)
    return 0


def cmd_representative(args) -> int:
    if args.values is not None:
        values = [int(v) for v in args.values.split(",") if v.strip()]
        x = fmt.kclass_from_json({"values": values}, args.n, args.field)
    else:
        if args.klass is None:
            raise ParseError("give a class file or --values")
        x = fmt.kclass_from_json(fmt.load_json(args.klass), args.n, args.field)
    _emit(fmt.matrix_to_json(representative(x)), args)
    return 0


def cmd_random(args) -> int:
    rng = random.Random(args.seed)
    if args.ranks is not None:
        ranks = [int(v) for v in args.ranks.split(",")]
        size = sum(ranks)
    else:
        size = args.size
        ranks = random_rank_pattern(args.n, args.field, size, rng)
    e = random_npotent(args.n, args.field, size, ranks, seed=rng.randrange(2**32))
    _emit(fmt.matrix_to_json(e), args)
    return 0


def _spec(args):
    if args.spec == "scalar":
        m = conductor_normalize(args.field if args.field is not None else _need_n(args) - 1)
        n = _need_n(args)
        return scalar_nhom(zeta(conductor_normalize(n - 1)), n, m)
    return fmt.nhom_from_json(fmt.load_json(args.spec))


def cmd_nhom_check(args) -> int:
    spec = _spec(args)
    bad = first_nhom_failure(spec)
    res = {"n-homomorphism": bad is None}
    if bad is not None:
        res["first_failure"] = [f"zeta^{j}" for j in bad]
    _emit(res, args)
    return 0 if bad is None else VerificationError.exit_code


def cmd_nhom_apply(args) -> int:
    spec = _spec(args)
    obj = fmt.load_json(args.input)
    if isinstance(obj, dict) and "kind" in obj:
        w = fmt.witness_from_json(obj)
        if not isinstance(w, EquivWitness):
            raise ParseError("only algebraic witnesses can be transported")
        _emit(fmt.witness_to_json(transport_witness(spec, w)), args)
    else:
        _emit(fmt.matrix_to_json(apply_entrywise(spec, fmt.matrix_from_json(obj))), args)
    return 0


def cmd_check_paper(args) -> int:
    results = run_checks(args.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        mark = "PASS" if r.ok else "FAIL"
        line = f"{mark}  {r.name:<{width}}  {r.seconds:6.2f}s"
        if args.pretty or not r.ok:
            line += f"  {r.detail}"
        print(line)
    passed = sum(r.ok for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return 0 if passed == len(results) else VerificationError.exit_code


class _Parser(argparse.ArgumentParser):
    """Usage errors are parse errors (exit 1), keeping 2 for non-n-potents."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, help="exponent n of e^n = e")
    common.add_argument("--field", type=int, default=None, help="conductor m of the base field Q(zeta_m)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--pretty", action="store_true", help="indented JSON / human-readable tables")

    p = _Parser(prog="npk", description="Exact n-potent matrices over cyclotomic fields.")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, func, help_text, *positional, needs_n=False, needs_field=False):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        for arg, kw in positional:
            sp.add_argument(arg, **kw)
        sp.set_defaults(func=func, needs_n=needs_n, needs_field=needs_field)
        return sp

    mat = ("matrix", {"help": "matrix JSON file ('-' for stdin)"})
    add("verify", cmd_verify, "check e^n = e", mat, needs_n=True)
    add("decompose", cmd_decompose, "n-partition of unity of an n-potent", mat, needs_n=True)
    add("recompose", cmd_recompose, "sum omega_k e_k of a partition", ("partition", {}))
    add("complement", cmd_complement, "complementary n-potent", mat, needs_n=True)
    add("split3", cmd_split3, "tripotent as e1 - e2", mat)
    add("split4", cmd_split4, "quadripotent over Q(zeta_4) as e1 and e2 + e3", mat)
    w = add("witness", cmd_witness, "verify or build equivalence witnesses",
            ("action", {"choices": sorted(_WITNESS_ARITY)}), ("inputs", {"nargs": "+"}))
    w.set_defaults(arity=_WITNESS_ARITY)
    add("class", cmd_class, "K_0^n class of an n-potent", mat, needs_n=True, needs_field=True)
    add("group", cmd_group, "structure of K_0^n(Q(zeta_m))", needs_n=True, needs_field=True)
    r = add("representative", cmd_representative, "n-potent realizing a class",
            ("klass", {"nargs": "?", "metavar": "class"}), needs_n=True, needs_field=True)
    r.add_argument("--values", help="comma-separated orbit values instead of a class file")
    rnd = add("random", cmd_random, "random n-potent", needs_n=True, needs_field=True)
    rnd.add_argument("--size", type=int, default=3)
    rnd.add_argument("--ranks", help="comma-separated component ranks r_0..r_(n-1)")
    add("nhom-check", cmd_nhom_check, "exact n-multiplicativity of a spec",
        ("spec", {"help": "spec JSON file, or 'scalar' for x -> zeta_(n-1) x"}))
    add("nhom-apply", cmd_nhom_apply, "apply a spec to a matrix or witness",
        ("spec", {}), ("input", {}))
    add("check-paper", cmd_check_paper, "run the regression checks of published facts")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.needs_n and args.n is None:
        parser.error(f"{args.verb}: --n is required")
    if args.needs_field and args.field is None:
        if args.verb == "random":
            args.field = 1
        else:
            parser.error(f"{args.verb}: --field is required")
    if args.n is not None and args.n < 2:
        parser.error("--n must be at least 2")
    if args.verb == "witness" and len(args.inputs) != args.arity[args.action]:
        parser.error(f"witness {args.action} takes {args.arity[args.action]} input file(s)")
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"FAILED: {exc.identity}", file=sys.stderr)
        return exc.exit_code
    except NPKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:  # malformed but parseable input, e.g. mismatched witnesses
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
