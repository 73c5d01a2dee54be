#!/usr/bin/env python3
"""
📊 Vertex Energies - per-vertex graph energies, their bounds and certificates
Command-line entry point
"""

import argparse
import hashlib
import sys
import os
import time

# Add the current directory to Python path to allow imports
current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, current_dir)

from core.analysis import failed_certificates, run_suite, scan_graph, SUITES
from core.closed_forms import closed_form_energies
from core.corpus import CorpusEntry, default_corpus, random_corpus
from core.coulson import coulson_report
from core.database import ScanDatabase
from core.errors import (
    GraphError, NoClosedForm, NumericalError, TooLarge, VertexEnergyError,
)
from core.geometry import cheeger, dual_cheeger, ollivier_ricci
from core.graph import (
    MatrixKind, format_edge_list, graph_fingerprint, parse_edge_list, parse_generator_spec,
)
from core.reports import (
    RunReport, certificate_record, curvature_record, scan_record,
)
from core.spectral import energy_report
from utils.constants import (
    APP_NAME, APP_VERSION, CORPUS_P_VALUES, CORPUS_RANDOM_COUNT, CORPUS_RANDOM_MAX_N,
    CORPUS_RANDOM_MIN_N, CORPUS_SEED, DEFAULT_SETTINGS, EXIT_CERTIFICATE_FAILURE,
    EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, KIND_NAMES,
)
from utils.log import logger, set_verbose
from utils.settings import load_settings
from workers.corpus_worker import CorpusWorker

METHODS = ['spectral', 'coulson', 'closed_form', 'all']


class UsageError(Exception):
    """Bad command-line values that argparse cannot catch on its own"""


def parse_range(text):
    """'a..b' -> (a, b)"""
    low, sep, high = text.partition('..')
    try:
        a, b = int(low), int(high)
    except ValueError:
        raise UsageError(f"range '{text}' must look like a..b") from None
    if not sep or a > b:
        raise UsageError(f"range '{text}' must look like a..b with a <= b")
    return a, b


def parse_probabilities(text):
    try:
        values = tuple(float(p) for p in text.split(','))
    except ValueError:
        raise UsageError(f"probabilities '{text}' must be a comma-separated list") from None
    if not all(0 < p <= 1 for p in values):
        raise UsageError(f"probabilities {values} must lie in (0, 1]")
    return values


def load_graph(args):
    """Graph, report descriptor and (family, params) for generator specs"""
    if args.gen:
        g = parse_generator_spec(args.gen)
        family, _, raw = args.gen.partition(':')
        params = tuple(int(p) for p in raw.split(','))
        return g, {'source': f"gen:{args.gen}", 'content_hash': graph_fingerprint(g)}, (family, params)
    with open(args.graph, 'rb') as f:
        content = f.read()
    g = parse_edge_list(content.decode('utf-8'))
    descriptor = {'source': args.graph, 'content_hash': hashlib.sha256(content).hexdigest()}
    return g, descriptor, None


def cmd_energy(args, settings):
    g, descriptor, generated = load_graph(args)
    kind = MatrixKind.parse(args.kind)
    methods = ['spectral', 'coulson', 'closed_form'] if args.method == 'all' else [args.method]

    results = {'kind': kind, 'methods': {}}
    for method in methods:
        if method == 'spectral':
            report = energy_report(g, kind)
            values, residuals = report.energies, report.residuals
        elif method == 'coulson':
            report = coulson_report(g, kind, settings['quadrature_tolerance'],
                                    settings['quadrature_max_depth'])
            values, residuals = report.energies, report.residuals
        else:
            try:
                if generated is None:
                    raise NoClosedForm("closed forms need a generator spec, not an edge-list file")
                values = tuple(c.value for c in closed_form_energies(*generated, kind))
            except NoClosedForm as e:
                if args.method != 'all':
                    raise
                logger.debug(f"🔍 Skipping closed form: {e}")
                continue
            residuals = None
        entry = {'energies': values, 'total': sum(values)}
        if residuals is not None:
            entry['residuals'] = residuals
        results['methods'][method] = entry

    if len(results['methods']) > 1:
        columns = [m['energies'] for m in results['methods'].values()]
        deviation = max(abs(a[v] - b[v]) for i, a in enumerate(columns) for b in columns[i + 1:]
                        for v in range(g.n))
        results['max_deviation'] = deviation
        results['agrees'] = deviation <= settings['coulson_tolerance']
    return descriptor, results, EXIT_OK


def _verify_graph(entry, suite, tol, equality_tol):
    certificates = run_suite(entry.graph, suite, equality_tol)
    failed = failed_certificates(certificates, tol)
    if failed:
        logger.error(f"❌ {len(failed)} certificate(s) failed on {entry.label}:\n"
                     f"{format_edge_list(entry.graph)}")
    return {
        'label': entry.label,
        'n': entry.graph.n,
        'edge_hash': graph_fingerprint(entry.graph),
        'seed': None if entry.seed is None else str(entry.seed),
        'failures': len(failed),
        'certificates': [certificate_record(c, tol, equality_tol) for c in certificates],
    }


def cmd_verify(args, settings):
    tol = settings['certificate_tolerance']
    if args.corpus:
        corpus = default_corpus(seed=args.seed, retry_budget=settings['random_retry_budget'])
        descriptor = {'source': f"corpus:{args.corpus}", 'seed': args.seed}
    else:
        g, descriptor, _ = load_graph(args)
        corpus = [CorpusEntry(descriptor['source'], g)]

    worker = CorpusWorker(
        corpus, lambda entry: _verify_graph(entry, args.suite, tol, settings['equality_tolerance']),
        workers=settings['workers'],
        progress=lambda i, label: logger.debug(f"🔍 [{i + 1}/{len(corpus)}] {label}"))
    graphs = worker.run()
    failures = sum(r['failures'] for r in graphs)
    results = {
        'suite': args.suite,
        'tolerance': tol,
        'equality_tolerance': settings['equality_tolerance'],
        'graphs': graphs,
        'summary': {'graphs': len(graphs), 'failures': failures},
    }
    print(f"{'✅' if failures == 0 else '❌'} verify {args.suite}: "
          f"{len(graphs)} graph(s), {failures} failed certificate(s)", file=sys.stderr)
    return descriptor, results, EXIT_CERTIFICATE_FAILURE if failures else EXIT_OK


def cmd_scan(args, settings):
    n_min, n_max = parse_range(args.n)
    if args.count < 1:
        raise UsageError(f"--count must be at least 1, got {args.count}")
    p_values = parse_probabilities(args.p)
    corpus = random_corpus(args.count, n_min, n_max, p_values, args.seed,
                           settings['random_retry_budget'])
    tol = settings['certificate_tolerance']

    worker = CorpusWorker(corpus, lambda entry: scan_graph(entry, tol), workers=settings['workers'])
    records = worker.run()
    violations = sum(1 for r in records if r.violated)
    descriptor = {'source': 'random', 'n': [n_min, n_max], 'count': args.count,
                  'p': list(p_values), 'seed': args.seed}
    results = {
        'records': [scan_record(r) for r in records],
        'summary': {'graphs': len(records), 'violations': violations},
    }
    print(f"📊 scan: {len(records)} graph(s), {violations} violation(s)", file=sys.stderr)
    return descriptor, results, EXIT_OK, (corpus, records)


def cmd_curvature(args, settings):
    g, descriptor, _ = load_graph(args)
    h = cheeger(g)
    h_dual = dual_cheeger(g)
    results = {
        'curvature': curvature_record(ollivier_ricci(g)),
        'cheeger': {'value': h.value, 'witness': list(h.witness_subset)},
        'dual_cheeger': {'value': h_dual.value, 'witness': [list(s) for s in h_dual.witness]},
    }
    return descriptor, results, EXIT_OK


def archive_scan(db_path, command, seed, report, corpus, records):
    violations = sum(1 for r in records if r.violated)
    db = ScanDatabase(db_path)
    run_id = db.add_run(' '.join(command), str(seed), len(records), violations,
                        report.report_hash())
    db.add_records(run_id, records, [format_edge_list(entry.graph) for entry in corpus])
    logger.debug(f"✅ Archived scan run {run_id} in {db_path}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', help="write the report here instead of stdout")
    common.add_argument('--tol', type=float, help="certificate tolerance override")
    common.add_argument('--settings', help="JSON settings file merged over the defaults")
    common.add_argument('--workers', type=int, help="threads for corpus runs")
    common.add_argument('--verbose', action='store_true', help="debug logging on stderr")

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument('--gen', help="generator spec family:param[,param], e.g. star:5")
    group.add_argument('--graph', help="edge-list file")

    parser = argparse.ArgumentParser(prog='main.py', description=f"{APP_NAME} {APP_VERSION}")
    commands = parser.add_subparsers(dest='command', required=True)

    energy = commands.add_parser('energy', parents=[common, source], help="per-vertex energies")
    energy.add_argument('--kind', choices=KIND_NAMES, default='laplacian')
    energy.add_argument('--method', choices=METHODS, default='spectral')

    verify = commands.add_parser('verify', parents=[common], help="run certificate suites")
    target = verify.add_mutually_exclusive_group(required=True)
    target.add_argument('--gen')
    target.add_argument('--graph')
    target.add_argument('--corpus', choices=['default'])
    verify.add_argument('--suite', choices=['all'] + list(SUITES), default='all')
    verify.add_argument('--seed', type=int, default=CORPUS_SEED)

    scan = commands.add_parser('scan', parents=[common], help="conjecture scan over random graphs")
    scan.add_argument('--n', default=f"{CORPUS_RANDOM_MIN_N}..{CORPUS_RANDOM_MAX_N}")
    scan.add_argument('--count', type=int, default=CORPUS_RANDOM_COUNT)
    scan.add_argument('--p', default=','.join(str(p) for p in CORPUS_P_VALUES))
    scan.add_argument('--seed', type=int, default=CORPUS_SEED)
    scan.add_argument('--db', help="archive the scan records in this sqlite file")

    commands.add_parser('curvature', parents=[common, source],
                        help="Ollivier-Ricci curvature and Cheeger constants")
    return parser


def resolve_settings(args):
    """defaults < --settings file < command-line flags"""
    settings = load_settings(args.settings, strict=True) if args.settings else dict(DEFAULT_SETTINGS)
    if args.tol is not None:
        settings['certificate_tolerance'] = args.tol
    if args.workers is not None:
        settings['workers'] = args.workers
    if args.verbose:
        settings['verbose'] = True
    return settings


HANDLERS = {
    'energy': cmd_energy,
    'verify': cmd_verify,
    'scan': cmd_scan,
    'curvature': cmd_curvature,
}


def main(argv=None):
    """Run one command; returns the process exit code"""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        settings = resolve_settings(args)
    except (OSError, ValueError) as e:
        print(f"❌ Cannot load settings: {e}", file=sys.stderr)
        return EXIT_INPUT
    set_verbose(settings['verbose'])
    started = time.perf_counter()
    try:
        outcome = HANDLERS[args.command](args, settings)
        descriptor, results, code = outcome[:3]
        report = RunReport(command=argv, graph=descriptor, results=results,
                           wall_time=time.perf_counter() - started)
        text = report.to_json()
        if args.out:
            with open(args.out, 'w', encoding='utf-8') as f:
                f.write(text)
        else:
            sys.stdout.write(text)
        if args.command == 'scan' and args.db:
            archive_scan(args.db, argv, args.seed, report, *outcome[3])
        return code
    except (UsageError, NoClosedForm) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, TooLarge, OSError, UnicodeDecodeError) as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except VertexEnergyError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n👋 Interrupted", file=sys.stderr)
        sys.exit(130)
