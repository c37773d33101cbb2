"""Command-line entry point.

Exit codes: 0 when the command succeeds (or a check passes), 1 when a
check fails, 2 on usage, parse or evaluation errors.
"""
import argparse
import json
import os
import sys
from dataclasses import dataclass

from .bits import members
from .concrete import TAGS, ParseError, parse, show
from .evaluators import (EvalConfig, EvalError, cctl_denotation, denot_msol, eval_cctl,
                         eval_gmc, eval_gmc_graph, eval_msol, eval_stl, stl_denotation)
from .lab import (Binding, Corpus, acceptance_family_check, equiv_check, family_check,
                  grade_check, hcompat_experiment, indist_experiment, lemma_suite)
from .lab.lemmas import SUITES
from .models import (FAMILIES, KripkeStructure, chain, complete_binary, load_model, unfold)
from .syntax import gmc as g
from .syntax import msol as m
from .syntax.msol import QuantMode
from .translators import (TranslationError, cctl_to_mpl, mtl_chain_to_fo, mtl_to_cowmtl,
                          osafgmc_to_wmtl, osgmc_to_mtl, stl_to_mtl)

SOURCES = ("gmc", "osgmc", "osafgmc", "cctl", "stl", "mtl-chain", "mtl-cow")
EXPERIMENTS = ("hcompat", "indist", "families", "grades", "acceptance")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated global options."""
    command: str
    fmt: str = "text"
    seed: int = 0
    jobs: int = 1
    mode: str = "full"
    horizon: bool = False
    relax_nonblocking: bool = False
    domain: str = "all"

    def __post_init__(self):
        if self.fmt not in ("json", "text"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        self.eval_config()

    def eval_config(self):
        try:
            return EvalConfig(QuantMode(self.mode), self.horizon, self.domain,
                              self.relax_nonblocking)
        except (ValueError, EvalError) as e:
            raise UsageError(str(e)) from None

    @classmethod
    def from_args(cls, args):
        jobs = args.jobs
        if jobs is None:
            try:
                jobs = int(os.environ.get("MTLKIT_JOBS", "1"))
            except ValueError:
                raise UsageError("MTLKIT_JOBS must be an integer") from None
        return cls(args.command, args.format, args.seed, jobs,
                   getattr(args, "mode", "full"), getattr(args, "horizon", False),
                   getattr(args, "relax_nonblocking", False), getattr(args, "domain", "all"))


# helpers ------------------------------------------------------------------------------

def _text_arg(value):
    return sys.stdin.read() if value == "-" else value


def _emit(cfg, payload, text):
    if cfg.fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _emit_report(cfg, report):
    payload = report.to_json()
    if cfg.fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        line = f"{report.status}: {report.models} models, {report.elapsed_ms:.1f} ms"
        if report.counterexample:
            line += "\ncounterexample: " + json.dumps(report.counterexample, sort_keys=True)
        print(line)
    return EXIT_FAIL if report.status == "fail" else EXIT_OK


def _load(path):
    try:
        with open(path) as fh:
            return load_model(json.load(fh))
    except (OSError, ValueError, KeyError) as e:
        raise UsageError(f"cannot load model {path}: {e}") from None


def translate(source, text, anchor="x", domain="all", relax=False, horizon=False):
    """Shared by ``translate`` and ``equiv``: returns a ``TranslationOutput``."""
    if source in ("gmc", "osgmc", "osafgmc"):
        f = parse(text, "gmc")
        if source == "gmc":
            try:
                af = g.check_alternation_free(g.pnf(f))
            except g.PolarityError:
                af = False
            source = "osafgmc" if af and g.check_one_step(f).ok else "osgmc"
        return (osafgmc_to_wmtl if source == "osafgmc" else osgmc_to_mtl)(f, anchor)
    if source == "cctl":
        return cctl_to_mpl(parse(text, "cctl"), anchor, domain)
    if source == "stl":
        return stl_to_mtl(parse(text, "stl"), None, anchor, relax, horizon, domain)
    f = parse(text, "msol")
    if source == "mtl-chain":
        from .translators.common import TranslationOutput
        return TranslationOutput(mtl_chain_to_fo(f), None, [], QuantMode.FULL)
    return mtl_to_cowmtl(f)


# subcommands --------------------------------------------------------------------------

def cmd_parse(args, cfg):
    f = parse(_text_arg(args.formula), args.logic)
    _emit(cfg, {"logic": args.logic, "formula": show(f)}, show(f))
    return EXIT_OK


def cmd_translate(args, cfg):
    out = translate(args.source, _text_arg(args.formula), args.anchor, cfg.domain,
                    cfg.relax_nonblocking, cfg.horizon)
    payload = {"formula": show(out.formula), "anchor": out.anchor,
               "fresh_vars": list(out.fresh_vars), "mode": out.mode_requirement.value}
    _emit(cfg, payload, show(out.formula))
    return EXIT_OK


def _result(value):
    if isinstance(value, bool):
        return value, "true" if value else "false"
    nodes = members(value)
    return nodes, "{" + ", ".join(map(str, nodes)) + "}"


def cmd_eval(args, cfg):
    model = _load(args.model)
    ecfg = cfg.eval_config()
    f = parse(_text_arg(args.formula), args.logic)
    if isinstance(model, KripkeStructure):
        if args.logic != "gmc":
            raise UsageError("Kripke structures are only supported for gmc; unfold them first")
        value = eval_gmc_graph(f, model)
        if args.node is not None:
            value = bool(value >> args.node & 1)
    elif args.logic == "gmc":
        value = eval_gmc(f, model)
        if args.node is not None:
            value = bool(value >> args.node & 1)
    elif args.logic == "msol":
        fo, _ = m.free_vars(f)
        if args.anchor in fo:
            value = denot_msol(f, args.anchor, model, None, ecfg)
            if args.node is not None:
                value = bool(value >> args.node & 1)
        else:
            value = eval_msol(f, model, None, None, ecfg)
    elif args.node is not None:
        value = (eval_cctl if args.logic == "cctl" else eval_stl_at)(f, model, args.node, ecfg)
    else:
        value = (cctl_denotation if args.logic == "cctl" else stl_denotation)(f, model, ecfg)
    payload, text = _result(value)
    _emit(cfg, {"logic": args.logic, "result": payload}, text)
    return EXIT_OK


def eval_stl_at(f, model, node, ecfg):
    return eval_stl(f, model, model.desc[node], ecfg)


def cmd_gen(args, cfg):
    if args.family in FAMILIES:
        kripke = FAMILIES[args.family](args.n)
        model = kripke if args.kripke else unfold(kripke, args.depth)
    elif args.family == "chain":
        model = chain(args.n)
    else:
        model = complete_binary(args.depth)
    payload = model.to_json()
    print(json.dumps(payload, sort_keys=True) if cfg.fmt == "json" else json.dumps(payload, indent=1))
    return EXIT_OK


def _corpus(args):
    ap = tuple(a for a in args.ap.split(",") if a)
    if args.models:
        return Corpus.files(args.models, args.seed)
    if args.chains:
        return Corpus.chains(args.max_nodes, ap, args.seed)
    return Corpus.enumerate(args.max_nodes, ap, args.unordered, args.seed)


def cmd_equiv(args, cfg):
    ecfg = cfg.eval_config()
    lhs_text = _text_arg(args.lhs)
    lhs = (parse(lhs_text, args.lhs_logic), Binding(args.lhs_logic, ecfg))
    if args.rhs is None:
        if args.lhs_logic not in ("gmc", "cctl", "stl"):
            raise UsageError("without RHS the left formula is compared with its translation")
        out = translate(args.lhs_logic, lhs_text, "x", cfg.domain, cfg.relax_nonblocking,
                        cfg.horizon)
        rhs = (out.formula, Binding.for_translation(out, cfg.horizon))
    else:
        logic = args.rhs_logic or args.lhs_logic
        rhs = (parse(_text_arg(args.rhs), logic), Binding(logic, ecfg))
    report = equiv_check(lhs, rhs, _corpus(args), cfg.jobs)
    return _emit_report(cfg, report)


def cmd_suite(args, cfg):
    formula = parse(args.formula, "gmc") if args.formula else None
    if formula is not None and args.name != "finite-witness":
        raise UsageError("--formula only applies to the finite-witness suite")
    report = lemma_suite(args.name, _corpus(args), args.samples, cfg.seed, formula)
    return _emit_report(cfg, report)


def cmd_experiment(args, cfg):
    if args.name == "hcompat":
        report = hcompat_experiment(args.n, args.depth, args.h, args.max_size, args.pairs, cfg.seed)
    elif args.name == "indist":
        report = indist_experiment(args.n, args.depth, args.max_size)
    elif args.name == "families":
        report = family_check()
    elif args.name == "grades":
        report = grade_check()
    else:
        report = acceptance_family_check()
    return _emit_report(cfg, report)


# argument parsing -----------------------------------------------------------------

def _eval_flags(p):
    p.add_argument("--mode", choices=[q.value for q in QuantMode], default="full")
    p.add_argument("--horizon", action="store_true", help="frontier marks stand for infinity")
    p.add_argument("--relax-nonblocking", action="store_true")
    p.add_argument("--domain", default="all",
                   help="CCTL* path domain: all, finite, maximal, infinite-approx")


def _corpus_flags(p):
    p.add_argument("--max-nodes", type=int, default=5)
    p.add_argument("--ap", default="a,q", help="comma-separated propositions")
    p.add_argument("--unordered", action="store_true", help="one tree per isomorphism class")
    p.add_argument("--chains", action="store_true", help="enumerate chains instead of trees")
    p.add_argument("--models", nargs="*", help="model JSON files instead of enumeration")


def build_parser():
    top = argparse.ArgumentParser(prog="mtlkit", description="Monadic tree logic workbench")
    top.add_argument("--format", choices=("json", "text"), default="text")
    top.add_argument("--seed", type=int, default=0)
    top.add_argument("--jobs", type=int, default=None,
                     help="worker processes (default: $MTLKIT_JOBS or 1)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="print the canonical form of a formula")
    p.add_argument("--logic", choices=TAGS, required=True)
    p.add_argument("formula", help="formula text, or - for stdin")

    p = sub.add_parser("translate", help="translate into MSOL")
    p.add_argument("--from", dest="source", choices=SOURCES, required=True)
    p.add_argument("--anchor", default="x")
    _eval_flags(p)
    p.add_argument("formula")

    p = sub.add_parser("eval", help="evaluate a formula on a model file")
    p.add_argument("--logic", choices=TAGS, required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--node", type=int)
    p.add_argument("--anchor", default="x")
    _eval_flags(p)
    p.add_argument("formula")

    p = sub.add_parser("gen", help="emit a model as JSON")
    p.add_argument("--family", choices=(*FAMILIES, "chain", "binary"), required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--kripke", action="store_true", help="emit the finite structure itself")

    p = sub.add_parser("equiv", help="compare two formulas over a corpus")
    p.add_argument("lhs")
    p.add_argument("rhs", nargs="?")
    p.add_argument("--lhs-logic", choices=TAGS, required=True)
    p.add_argument("--rhs-logic", choices=TAGS)
    _eval_flags(p)
    _corpus_flags(p)

    p = sub.add_parser("suite", help="run a lemma suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--formula", help="fixed formula for the finite-witness suite")
    _corpus_flags(p)

    p = sub.add_parser("experiment", help="family experiments")
    p.add_argument("name", choices=EXPERIMENTS)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--pairs", type=int, default=100)
    return top


COMMANDS = {"parse": cmd_parse, "translate": cmd_translate, "eval": cmd_eval, "gen": cmd_gen,
            "equiv": cmd_equiv, "suite": cmd_suite, "experiment": cmd_experiment}


def run(argv=None):
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
        # argparse will not pick up a second positional that follows options
        if args.command == "equiv" and args.rhs is None and len(extra) == 1 \
                and not extra[0].startswith("--"):
            args.rhs, extra = extra[0], []
        if extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[args.command](args, cfg)
    except (UsageError, ParseError, EvalError, TranslationError, ValueError) as e:
        print(f"mtlkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
