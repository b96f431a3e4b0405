"""Command-line front end.

One input file per invocation; every verdict line carries the caps it was
computed under.  Human-readable output is rendered from the same object that
--json serializes, so the two can never diverge.

Exit codes: 0 success, 1 usage, 2 parse/input error, 3 budget exceeded,
4 internal invariant violation (always a bug).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import circularity, codes, corpus, growth, periodicity
from .errors import (
    BudgetExceededError,
    D0LError,
    ErasingSystemError,
    InvariantError,
    NotInCorpusError,
    ParseError,
)
from .system import D0LSystem, parse_system

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4

_UR_STATUS = {"yes": "yes", "no_up_to_cap": "no_cap", "no_certified": "no"}
_SYS_INJ = {"yes_certified": "yes", "yes_up_to_bound": "bound", "no": "no"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="d0l", description="Decision procedures for D0L systems.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p: argparse.ArgumentParser, word: bool = False):
        p.add_argument("file", help="system description file")
        if word:
            p.add_argument("word", help="word to interpret (tokens, or compact)")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--max-corpus-len", type=_positive, default=corpus.DEFAULT_MAX_LEN)
        p.add_argument("--prefix-cap", type=_positive, default=periodicity.DEFAULT_PREFIX_CAP)
        p.add_argument("--generations", type=_positive, default=corpus.DEFAULT_GENERATIONS)

    common(sub.add_parser("classify", help="growth, pushiness, primitivity, injectivity"))
    common(sub.add_parser("circular", help="decide circularity"))
    common(sub.add_parser("simplify", help="injective simplification"))
    common(sub.add_parser("factors", help="dump the factor corpus"))
    common(sub.add_parser("interpret", help="interpretations and synchronization"), word=True)
    delay = sub.add_parser("delay", help="estimate the synchronization delay")
    common(delay)
    delay.add_argument("--mode", choices=("weak", "strong"), default="weak")
    common(sub.add_parser("repetitive", help="decide repetitiveness"))
    return parser


def _word(system: D0LSystem, w: str) -> str:
    return system.alphabet.display(w)


def _pair(system: D0LSystem, pair) -> list[str]:
    return [_word(system, pair[0]), _word(system, pair[1])]


def _injectivity_json(system: D0LSystem, report: codes.InjectivityReport) -> dict:
    out: dict = {"morphism_injective": report.morphism_injective}
    if report.morphism_witness is not None:
        out["witness"] = _pair(system, report.morphism_witness)
    out["system_injective"] = _SYS_INJ[report.system_status]
    if report.system_witness is not None:
        out["system_witness"] = _pair(system, report.system_witness)
    if report.bound is not None:
        out["bound"] = report.bound
    return out


def _certificate_json(alphabet, cert: periodicity.PeriodicPointCertificate) -> dict:
    return {
        "letter": alphabet.token(cert.letter),
        "ell": cert.ell,
        "period": alphabet.display(cert.period),
        "power": cert.power,
    }


def _interp_json(system: D0LSystem, interp: circularity.Interpretation) -> dict:
    return {
        "prefix": _word(system, interp.prefix),
        "preimage": _word(system, interp.preimage),
        "suffix": _word(system, interp.suffix),
        "cuts": sorted(interp.cuts),
    }


def _simplification_json(simp: codes.InjectiveSimplification) -> list[dict]:
    steps = []
    for step in simp.chain:
        decode = {
            step.decode.source.token(b): step.decode.target.display(step.decode.image(b))
            for b in step.decode.source.symbols
        }
        merge = {
            step.merge.source.token(a): step.merge.target.display(step.merge.image(a))
            for a in step.merge.source.symbols
        }
        steps.append({"decode": decode, "merge": merge})
    return steps


def cmd_classify(system: D0LSystem, args) -> dict:
    alphabet = system.alphabet
    bounded = growth.bounded_letters(system)
    report = codes.injectivity(system, args.max_corpus_len, args.generations)
    return {
        "bounded": [alphabet.token(s) for s in alphabet.symbols if s in bounded],
        "growth": {
            alphabet.token(s): {
                "alpha": (gc := growth.growth_class(system, s)).alpha,
                "beta": gc.beta_str,
            }
            for s in alphabet.symbols
        },
        "sigma": [
            sorted(alphabet.token(s) for s in cls)
            for cls in growth.sigma_partition(system).classes
        ],
        "pushy": growth.is_pushy(system),
        "primitive": growth.is_primitive(system.morphism),
        "bounded_sync_bound": growth.bounded_sync_bound(system),
        "injectivity": _injectivity_json(system, report),
    }


def cmd_circular(system: D0LSystem, args) -> dict:
    verdict = circularity.decide_circularity(
        system, args.prefix_cap, args.max_corpus_len, args.generations
    )
    out: dict = {"status": verdict.status}
    if verdict.mode is not None:
        out["mode"] = verdict.mode
    witness = verdict.witness
    if isinstance(witness, circularity.CollisionFamilyWitness):
        out["witness"] = {
            "kind": "collision_family",
            "thresholds": list(witness.thresholds),
            "pairs": [_pair(system, p) for p in witness.pairs],
        }
    elif isinstance(witness, circularity.RepetitionFamilyWitness):
        out["witness"] = {
            "kind": "repetition_family",
            "certificate": _certificate_json(
                verdict.ur.simplification.final_system.alphabet, witness.certificate
            ),
            "lifted_period": _word(system, witness.lifted_period),
            "word": _word(system, witness.word),
            "interpretations": [
                _interp_json(system, witness.interp_plain),
                _interp_json(system, witness.interp_shifted),
            ],
        }
    out["caps"] = {"prefix": verdict.prefix_cap, "corpus": verdict.corpus_len}
    if verdict.weak_delay is not None:
        out["weak_delay_estimate"] = verdict.weak_delay
    if verdict.diagnostics:
        out["diagnostics"] = list(verdict.diagnostics)
    return out


def cmd_simplify(system: D0LSystem, args) -> dict:
    report = codes.injectivity(system, args.max_corpus_len, args.generations)
    simp = codes.injective_simplification(system)
    out = _injectivity_json(system, report)
    out["simplification"] = _simplification_json(simp)
    final = simp.final_system
    out["final"] = {
        "alphabet": list(final.alphabet.tokens),
        "axiom": _word(final, final.axiom),
        "rules": {
            final.alphabet.token(s): final.alphabet.display(final.morphism.image(s))
            for s in final.alphabet.symbols
        },
    }
    return out


def cmd_factors(system: D0LSystem, args) -> dict:
    fc = corpus.factor_corpus(system, args.max_corpus_len, args.generations)
    return {
        "factors": [_word(system, f) for f in fc.sorted_factors()],
        "count": len(fc.factors),
        "max_len": fc.max_len,
        "generation": fc.generation,
        "stable": fc.stable,
    }


def cmd_interpret(system: D0LSystem, args) -> dict:
    word = system.alphabet.parse_word(args.word)
    fc = corpus.factor_corpus(system, max(args.max_corpus_len, len(word) + 2), args.generations)
    report = circularity.sync_report(system, word, fc)
    return {
        "word": _word(system, word),
        "interpretations": [_interp_json(system, i) for i in report.interpretations],
        "sync_positions": sorted(report.sync_positions),
        "caps": {"corpus": fc.max_len, "generations": fc.generation},
    }


def cmd_delay(system: D0LSystem, args) -> dict:
    est = circularity.estimate_sync_delay(
        system, args.max_corpus_len, args.mode, args.generations
    )
    out: dict = {"mode": est.mode, "ok": est.ok}
    if est.delay is not None:
        out["delay"] = est.delay
    if est.witness is not None:
        out["failure_witness"] = _word(system, est.witness)
    out["corpus_len"] = est.corpus_len
    out["generations"] = est.generations
    out["corpus_stable"] = est.corpus_stable
    return out


def cmd_repetitive(system: D0LSystem, args) -> dict:
    verdict = periodicity.is_repetitive(system, args.prefix_cap)
    ur = verdict.ur
    out: dict = {"repetitive": _UR_STATUS[verdict.status]}
    if verdict.kind is not None:
        out["kind"] = verdict.kind
    if verdict.pushy_cycle is not None:
        letter, word = verdict.pushy_cycle
        out["pushy_cycle"] = {
            "letter": system.alphabet.token(letter),
            "bounded_word": _word(system, word),
        }
    out["unboundedly_repetitive"] = _UR_STATUS[ur.status]
    if ur.certificate is not None:
        out["certificate"] = _certificate_json(
            ur.simplification.final_system.alphabet, ur.certificate
        )
    if ur.lifted_period is not None:
        out["lifted_period"] = _word(system, ur.lifted_period)
    out["cap"] = verdict.cap
    return out


_COMMANDS = {
    "classify": cmd_classify,
    "circular": cmd_circular,
    "simplify": cmd_simplify,
    "factors": cmd_factors,
    "interpret": cmd_interpret,
    "delay": cmd_delay,
    "repetitive": cmd_repetitive,
}


def _render(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_scalar_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and item and not _is_scalar_list(item):
                lines.append(f"{pad}-")
                lines.extend(_render(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _is_scalar_list(v) -> bool:
    return isinstance(v, list) and all(
        not isinstance(x, (dict, list)) for x in v
    )


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict) and not v:
        return "{}"
    if v == "":
        return "''"
    return str(v)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"d0l: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        system = parse_system(text)
        result = _COMMANDS[args.verb](system, args)
    except ParseError as exc:
        print(f"d0l: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ErasingSystemError, NotInCorpusError) as exc:
        print(f"d0l: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"d0l: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantError as exc:
        print(f"d0l: internal invariant violation (bug): {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except D0LError as exc:
        print(f"d0l: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.verb == "factors" and not args.json:
        for f in result["factors"]:
            print(f)
        print(
            f"# count={result['count']} max_len={result['max_len']} "
            f"generation={result['generation']} stable={_scalar(result['stable'])}"
        )
        return EXIT_OK
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        print("\n".join(_render(result)))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
