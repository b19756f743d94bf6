"""Command-line front end: fan file parsing, subcommand dispatch, reports.

Fan files are JSON objects {"dim": n, "rays": [[int,..],..],
"max_cones": [[idx,..],..]} with 0-based indices, primitive rays, and
cones sorted ascending.  Reports are plain text or, with --json, a single
JSON document with deterministic (byte-identical) output.  Exit codes:
0 all assertions hold, 1 assertion failure, 2 malformed input.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .classify import (
    ClassificationViolation,
    analyze_divisor,
    catalog,
    classify_fano_with_divisor,
    find_transverse_extremal,
    random_corpus,
    simplify_pair,
    theorem1_check,
)
from .fan import Fan, InvalidFanError, fans_isomorphic, is_complete, is_smooth, validate, walls
from .intersect import TDivisor, anticanonical_degree, is_fano, positivity
from .mori import contraction_info, is_extremal, is_mori_extremal


class FanFormatError(ValueError):
    """A fan file does not follow the JSON contract."""


def _require_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise FanFormatError(f"{what} must be an integer, got {value!r}")
    return value


def parse_fan(source):
    """Parse and validate a fan file (path or file object)."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise FanFormatError(f"malformed JSON: {err}") from None
    if not isinstance(data, dict):
        raise FanFormatError("fan file must be a JSON object")
    extra = set(data) - {"dim", "rays", "max_cones"}
    if extra:
        raise FanFormatError(f"unknown keys {sorted(extra)}")
    for key in ("dim", "rays", "max_cones"):
        if key not in data:
            raise FanFormatError(f"missing key {key!r}")
    dim = _require_int(data["dim"], "dim")
    rays = data["rays"]
    cones = data["max_cones"]
    if not isinstance(rays, list) or not isinstance(cones, list):
        raise FanFormatError("rays and max_cones must be arrays")
    for i, ray in enumerate(rays):
        if not isinstance(ray, list) or len(ray) != dim:
            raise FanFormatError(f"ray {i} must be an array of {dim} integers")
        for c in ray:
            _require_int(c, f"ray {i} coordinate")
    for ci, cone in enumerate(cones):
        if not isinstance(cone, list):
            raise FanFormatError(f"cone {ci} must be an array of ray indices")
        if len(cone) != dim:
            raise FanFormatError(
                f"cone {ci} has size {len(cone)}, expected {dim}"
            )
        for i in cone:
            _require_int(i, f"cone {ci} entry")
    fan = Fan(dim, tuple(tuple(r) for r in rays), tuple(tuple(c) for c in cones))
    report = validate(fan)
    if not report.valid:
        raise FanFormatError("; ".join(report.problems))
    return fan


def fan_to_dict(fan):
    return {
        "dim": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }


def parse_divisor(source, fan):
    """Parse a divisor file {"coeffs": [int, ...]} aligned with ray order."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise FanFormatError(f"malformed JSON: {err}") from None
    if not isinstance(data, dict) or set(data) != {"coeffs"}:
        raise FanFormatError('divisor file must be {"coeffs": [int, ...]}')
    coeffs = data["coeffs"]
    if not isinstance(coeffs, list):
        raise FanFormatError("coeffs must be an array")
    for i, c in enumerate(coeffs):
        _require_int(c, f"coefficient {i}")
    if len(coeffs) != len(fan.rays):
        raise FanFormatError(
            f"divisor has {len(coeffs)} coefficients, fan has {len(fan.rays)} rays"
        )
    return TDivisor(tuple(coeffs))


def divisor_to_dict(divisor):
    return {"coeffs": list(divisor.coeffs)}


def write_fan(fan, path):
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(fan_to_dict(fan), handle, sort_keys=True)
        handle.write("\n")


@dataclass
class Report:
    command: str
    status: str = "pass"
    findings: list = field(default_factory=list)
    witness: list | None = None

    def flag_failure(self):
        self.status = "fail"


def _wall_record(fan, wall):
    return {
        "wall_rays": list(wall.wall_rays),
        "apexes": [wall.apex_a, wall.apex_b],
        "coeffs": list(wall.coeffs),
        "anticanonical_degree": anticanonical_degree(fan, wall),
    }


def _witness_rows(matrix):
    return None if matrix is None else [list(row) for row in matrix]


def cmd_check(args):
    fan = parse_fan(args.fan)
    report = Report("check")
    smooth = is_smooth(fan)
    complete = is_complete(fan)
    record = {
        "dim": fan.dim,
        "rays": len(fan.rays),
        "max_cones": len(fan.max_cones),
        "smooth": smooth,
        "complete": complete,
        "fano": is_fano(fan) if smooth and complete else None,
    }
    report.findings.append(record)
    if smooth and complete:
        if args.divisor:
            divisor = parse_divisor(args.divisor, fan)
            scan = positivity(fan, divisor)
            report.findings.append(
                {
                    "divisor": list(divisor.coeffs),
                    "ample": scan.ample,
                    "nef": scan.nef,
                    "min_degree": scan.min_degree,
                    "min_wall": list(scan.min_wall.wall_rays),
                }
            )
        for wall in walls(fan):
            report.findings.append(_wall_record(fan, wall))
    return report


def cmd_mori(args):
    fan = parse_fan(args.fan)
    report = Report("mori")
    for wall in walls(fan):
        record = _wall_record(fan, wall)
        record["extremal"] = is_extremal(fan, wall)
        record["mori_extremal"] = is_mori_extremal(fan, wall)
        record["contraction"] = (
            contraction_info(fan, wall).kind if record["mori_extremal"] else None
        )
        report.findings.append(record)
    return report


def cmd_divisors(args):
    fan = parse_fan(args.fan)
    report = Report("divisors")
    for i in range(len(fan.rays)):
        analysis = analyze_divisor(fan, i)
        record = {
            "ray": i,
            "vector": list(fan.rays[i]),
            "proj_space": analysis.is_proj_space,
        }
        if analysis.is_proj_space:
            record["degree"] = analysis.d
            record["line_class"] = list(analysis.line_class.dots)
        report.findings.append(record)
    return report


def _step_record(step):
    return {
        "removed_ray": step.removed_ray,
        "wall_rays": list(step.wall.wall_rays),
        "apexes": [step.wall.apex_a, step.wall.apex_b],
        "result_divisor_ray": step.result_divisor_ray,
        "center_cone": list(step.center_cone),
    }


def _check_ray(fan, ray):
    if not 0 <= ray < len(fan.rays):
        raise FanFormatError(f"ray index {ray} out of range 0..{len(fan.rays) - 1}")


def cmd_classify(args):
    fan = parse_fan(args.fan)
    _check_ray(fan, args.ray)
    report = Report("classify")
    try:
        result = classify_fano_with_divisor(fan, args.ray)
    except ClassificationViolation as err:
        report.flag_failure()
        report.findings.append({"violation": str(err)})
        return report
    report.findings.append(
        {
            "ray": args.ray,
            "case": result.case_tag,
            "nu": result.nu,
            "route": result.route,
            "steps": [_step_record(s) for s in result.steps],
        }
    )
    report.witness = _witness_rows(result.witness)
    return report


def cmd_simplify(args):
    fan = parse_fan(args.fan)
    _check_ray(fan, args.ray)
    report = Report("simplify")
    before = analyze_divisor(fan, args.ray)
    if not before.is_proj_space:
        report.flag_failure()
        report.findings.append(
            {"ray": args.ray, "error": "divisor is not a projective space"}
        )
        return report
    step = simplify_pair(fan, args.ray)
    if step is None:
        wall = find_transverse_extremal(fan, args.ray)
        reason = (
            "no transverse Mori extremal wall"
            if wall is None
            else "fibration case"
        )
        report.findings.append(
            {"ray": args.ray, "simplified": False, "reason": reason}
        )
        return report
    record = {
        "ray": args.ray,
        "simplified": True,
        "degree_before": before.d,
        "degree_after": before.d + 1,
        "result": fan_to_dict(step.result_fan),
    }
    record.update(_step_record(step))
    report.findings.append(record)
    return report


def _entry_label(entry):
    if entry.nu is None:
        return f"case_{entry.case_tag}"
    return f"case_{entry.case_tag}_nu{entry.nu}"


def _check_dim(dim):
    if not 3 <= dim <= 6:
        raise FanFormatError("--dim must be between 3 and 6")


def cmd_catalog(args):
    _check_dim(args.dim)
    report = Report("catalog")
    entries = catalog(args.dim)
    for entry in entries:
        report.findings.append(
            {
                "case": entry.case_tag,
                "nu": entry.nu,
                "name": entry.name,
                "fano": True,
                "divisors": [
                    {"ray": i, "degree": d} for i, d in entry.divisor_rays
                ],
                "rays": [list(r) for r in entry.fan.rays],
                "max_cones": [list(c) for c in entry.fan.max_cones],
            }
        )
    if args.emit:
        os.makedirs(args.emit, exist_ok=True)
        for entry in entries:
            write_fan(
                entry.fan, os.path.join(args.emit, _entry_label(entry) + ".json")
            )
    return report


def cmd_verify_theorem2(args):
    _check_dim(args.dim)
    report = Report("verify-theorem2")
    n = args.dim
    entries = catalog(n)
    count_ok = len(entries) == 2 * n + 1
    report.findings.append(
        {"check": "catalog-size", "expected": 2 * n + 1, "actual": len(entries), "ok": count_ok}
    )
    if not count_ok:
        report.flag_failure()
    for entry in entries:
        fano = is_fano(entry.fan)
        divisors_ok = True
        for i, expected_d in entry.divisor_rays:
            analysis = analyze_divisor(entry.fan, i)
            if not analysis.is_proj_space or analysis.d != expected_d:
                divisors_ok = False
        classified_ok = True
        for i, _ in entry.divisor_rays:
            result = classify_fano_with_divisor(entry.fan, i)
            if (result.case_tag, result.nu) != (entry.case_tag, entry.nu):
                classified_ok = False
        ok = fano and divisors_ok and classified_ok
        if not ok:
            report.flag_failure()
        report.findings.append(
            {
                "check": "entry",
                "name": entry.name,
                "fano": fano,
                "divisors_ok": divisors_ok,
                "classifies_to_itself": classified_ok,
                "ok": ok,
            }
        )
    distinct = True
    for a in range(len(entries)):
        for b in range(a + 1, len(entries)):
            witness = fans_isomorphic(entries[a].fan, entries[b].fan)
            if witness is not None:
                distinct = False
                report.flag_failure()
                report.findings.append(
                    {
                        "check": "distinctness",
                        "pair": [entries[a].name, entries[b].name],
                        "ok": False,
                    }
                )
    report.findings.append({"check": "pairwise-distinct", "ok": distinct})
    return report


def _theorem1_findings(report, label, fan):
    t1 = theorem1_check(fan)
    for probe in t1.probes:
        record = {
            "fan": label,
            "cone_index": probe.cone_index,
            "cone": list(probe.cone),
            "blowup_fano": probe.blowup_fano,
        }
        if probe.blowup_fano:
            record["conclusion"] = probe.conclusion
            record["witness"] = _witness_rows(probe.witness)
        if probe.violation:
            record["violation"] = probe.violation
        report.findings.append(record)
    for violation in t1.global_violations:
        report.findings.append({"fan": label, "violation": violation})
    return not t1.violations


def cmd_verify_theorem1(args):
    report = Report("verify-theorem1")
    ok = True
    if args.input:
        ok = _theorem1_findings(report, args.input, parse_fan(args.input))
    else:
        n, count, depth, seed = args.corpus
        try:
            fans = random_corpus(n, count, depth, seed)
        except ValueError as err:
            raise FanFormatError(str(err)) from None
        for k, fan in enumerate(fans):
            ok = _theorem1_findings(report, f"corpus[{k}]", fan) and ok
    if not ok:
        report.flag_failure()
    return report


def cmd_iso(args):
    fan_a = parse_fan(args.a)
    fan_b = parse_fan(args.b)
    report = Report("iso")
    witness = fans_isomorphic(fan_a, fan_b)
    report.findings.append({"isomorphic": witness is not None})
    report.witness = _witness_rows(witness)
    if witness is None:
        report.flag_failure()
    return report


def _corpus_arg(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected n,count,depth,seed")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("corpus entries must be integers")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="toricfano",
        description=(
            "Exact toric-fan computations: walls, Mori extremality, Fano"
            " tests, and the classification of point blow-ups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument(
            "--json", action="store_true", help="emit a JSON report on stdout"
        )
        p.set_defaults(handler=handler)
        return p

    p = add("check", cmd_check, help="validate a fan and print its wall table")
    p.add_argument("fan")
    p.add_argument("--divisor", help="divisor file to scan for ampleness/nefness")
    p = add("mori", cmd_mori, help="per-wall degrees, extremality, contraction kinds")
    p.add_argument("fan")
    p = add("divisors", cmd_divisors, help="analyze every prime divisor")
    p.add_argument("fan")
    p = add("classify", cmd_classify, help="identify a Fano fan with a chosen divisor")
    p.add_argument("fan")
    p.add_argument("--ray", type=int, required=True)
    p = add("simplify", cmd_simplify, help="blow down once through a transverse wall")
    p.add_argument("fan")
    p.add_argument("--ray", type=int, required=True)
    p = add("catalog", cmd_catalog, help="build the 2n+1 classified fans")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--emit", help="write each catalog fan to this directory")
    p = add("verify-theorem2", cmd_verify_theorem2, help="verify the divisor classification")
    p.add_argument("--dim", type=int, required=True)
    p = add("verify-theorem1", cmd_verify_theorem1, help="verify the point blow-up criterion")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", help="fan file to test")
    group.add_argument(
        "--corpus", type=_corpus_arg, help="n,count,depth,seed random corpus"
    )
    p = add("iso", cmd_iso, help="search for a fan isomorphism witness")
    p.add_argument("a")
    p.add_argument("b")
    return parser


def _emit(report, as_json, stream):
    if as_json:
        document = {
            "command": report.command,
            "status": report.status,
            "findings": report.findings,
            "witness": report.witness,
        }
        stream.write(json.dumps(document, sort_keys=True))
        stream.write("\n")
        return
    stream.write(f"command: {report.command}\n")
    stream.write(f"status: {report.status}\n")
    for record in report.findings:
        parts = [f"{key}={record[key]}" for key in sorted(record)]
        stream.write("  " + " ".join(parts) + "\n")
    if report.witness is not None:
        stream.write(f"witness: {report.witness}\n")


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else 2
    try:
        report = args.handler(args)
    except (FanFormatError, InvalidFanError, OSError) as err:
        report = Report(args.command, status="invalid-input")
        report.findings.append({"error": str(err)})
    except (ClassificationViolation, ValueError) as err:
        report = Report(args.command, status="fail")
        report.findings.append({"error": str(err)})
    _emit(report, args.json, sys.stdout)
    return {"pass": 0, "fail": 1, "invalid-input": 2}[report.status]


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
