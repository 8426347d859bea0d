"""
Desk-scale acceptance evaluation
Runs every verification suite at its acceptance bound and prints a timing table
"""
import argparse
import os
import sys
import time

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from hecke_engine.kl import KLTable, kl_cache_dumps, kl_cache_loads, kl_canonical
from hecke_engine.verification import SuiteFactory
from hecke_engine.weyl import ap_enumerate, enumerate_compositions


# (description, suite, rank, length bound, time limit in seconds)
ACCEPTANCE_RUNS = [
    ("Relations d=3", "relations", 3, 0, 60),
    ("Relations d=4", "relations", 4, 0, 60),
    ("Relations d=5", "relations", 5, 0, 60),
    ("Multiplication vs oracle", "multiplication", 3, 4, 300),
    ("Length formula vs oracle", "length", 3, 6, 60),
    ("Monomial factorization", "monomial", 3, 6, 120),
    ("Bruhat order vs subwords", "bruhat", 3, 5, 300),
    ("Canonical basis", "canonical", 3, 6, 600),
    ("Positivity", "positivity", 3, 3, 600),
    ("Classical specialization", "specialization", 3, 4, 60),
]


def run_suite(description, name, d, max_length, limit):
    print(f"\n{'='*60}")
    print(f"{description}: {name} suite, d={d}, length <= {max_length}")
    print(f"{'='*60}")
    start = time.time()
    report = SuiteFactory.create(name, d, max_length).run()
    duration = time.time() - start
    for failure in report.failures:
        print(f"  ❌ {failure}")
    print(f"  {report.checked} checks in {duration:.2f}s")
    return {
        "description": description,
        "passed": report.passed and duration < limit,
        "checks": report.checked,
        "duration": duration,
        "limit": limit,
    }


def run_closure_and_serialization():
    """Length-0 stratum, compositions and byte-identical cache output"""
    start = time.time()
    zero_stratum = len(ap_enumerate(3, 0)) == 2
    compositions = len(enumerate_compositions(4, 3)) == 4

    first, second = KLTable(3), KLTable(3)
    elements = ap_enumerate(3, 3)
    for w in elements:
        kl_canonical(w, first)
    for w in reversed(elements):
        kl_canonical(w, second)
    text = kl_cache_dumps(first)
    serialization = text == kl_cache_dumps(second) and kl_cache_dumps(kl_cache_loads(text)) == text

    duration = time.time() - start
    return {
        "description": "Closure, compositions, serialization",
        "passed": zero_stratum and compositions and serialization,
        "checks": 3,
        "duration": duration,
        "limit": 60,
    }


def print_summary_table(results):
    print("\n" + "="*80)
    print("ACCEPTANCE SUMMARY")
    print("="*80)
    print(f"{'Criterion':<40} {'Checks':<10} {'Time':<10} {'Limit':<8} {'Result':<10}")
    print("-"*80)
    for result in results:
        verdict = "✅ PASS" if result["passed"] else "❌ FAIL"
        print(f"{result['description']:<40} {result['checks']:<10} "
              f"{result['duration']:.1f}s{'':<5} {result['limit']:<8} {verdict:<10}")
    print("="*80)
    passed = sum(1 for result in results if result["passed"])
    print(f"{passed}/{len(results)} criteria passed")


def main():
    parser = argparse.ArgumentParser(description="Run the acceptance suites with timings")
    parser.add_argument("--quick", action="store_true", help="cap every length bound at 3")
    args = parser.parse_args()

    results = []
    for description, name, d, max_length, limit in ACCEPTANCE_RUNS:
        if args.quick:
            max_length = min(max_length, 3)
        results.append(run_suite(description, name, d, max_length, limit))
    results.append(run_closure_and_serialization())
    print_summary_table(results)
    return 0 if all(result["passed"] for result in results) else 4


if __name__ == "__main__":
    print("\n🔍 Acceptance Evaluation")
    sys.exit(main())
