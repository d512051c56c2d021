#!/usr/bin/env python
"""
This script generates a .env file for umbilic_atlas.
It lists every tunable with its default and can prompt for new values.
"""

import argparse
import os

# (name, default, prompt), grouped by section
SECTIONS = [
    ("Tolerances", [
        ("UMBILIC_TOL", "1e-9", "Umbilic residual tolerance"),
        ("CLASS_EPS", "1e-10", "Hessian sign threshold for point classes"),
        ("CLUSTER_RADIUS", "1e-8", "Radius for merging duplicate umbilics"),
        ("ROOT_WIDTH_BITS", "60", "Bits of width for isolating intervals"),
    ]),
    ("Search region", [
        ("DEFAULT_BOX", "-10,10,-10,10", "Default search box x0,x1,y0,y1"),
        ("MAX_BOX_HALF_WIDTH", "80", "Largest half width reached by box expansion"),
    ]),
    ("Winding numbers", [
        ("WINDING_SAMPLES", "1024", "Initial samples per winding circle"),
        ("WINDING_MIN_SAMPLES", "256", "Minimum samples per winding circle"),
        ("WINDING_MAX_SAMPLES", "1000000", "Maximum samples per winding circle"),
        ("WINDING_RADIUS", "0.1", "Default winding radius"),
    ]),
    ("Streamlines", [
        ("R_STOP", "1e-3", "Stop distance from umbilics"),
        ("STREAMLINE_ATOL", "1e-8", "Absolute local error per step"),
        ("STREAMLINE_MAX_STEP_FRACTION", "1e-2", "Largest step as a fraction of the region diameter"),
        ("STREAMLINE_MAX_LENGTH", "4.0", "Arc length traced each way from a seed"),
        ("SEEDS", "64", "Grid seeds per portrait"),
    ]),
    ("Concurrency", [
        ("MAX_WORKERS", "4", "Worker threads"),
    ]),
    ("Reporting", [
        ("REPORT_TIMING", "False", "Include stage timings in reports (True/False)"),
        ("METRICS_TEXTFILE", "", "Prometheus textfile path (empty: none)"),
    ]),
    ("Logging", [
        ("LOG_LEVEL", "INFO", "Log level"),
        ("LOG_FILE", "", "Rotating log file (empty: console only)"),
    ]),
]


def main():
    parser = argparse.ArgumentParser(description="Write a .env file for umbilic_atlas")
    parser.add_argument("--defaults", action="store_true", help="Write every default without prompting")
    parser.add_argument("--output", default=".env", help="Output file (default: .env)")
    args = parser.parse_args()
    env_file = args.output

    # Check if .env already exists
    if os.path.exists(env_file) and not args.defaults:
        overwrite = input(f"{env_file} already exists. Overwrite? (y/n): ").lower()
        if overwrite != 'y':
            print("Aborted.")
            return

    values = {}
    for title, entries in SECTIONS:
        if not args.defaults:
            print(f"\n{title}")
            print("-" * len(title))
        for name, default, prompt in entries:
            if args.defaults:
                values[name] = default
            else:
                values[name] = input(f"{prompt} (default: {default or 'unset'}): ") or default

    # Create the .env file
    with open(env_file, 'w') as f:
        for title, entries in SECTIONS:
            f.write(f"# {title}\n")
            for name, _, _ in entries:
                f.write(f"{name}={values[name]}\n")
            f.write("\n")

    print(f"\n{env_file} file created successfully!")
    print("Run an analysis with:")
    print("  python -m umbilic_atlas analyze --poly \"x*y\"")


if __name__ == "__main__":
    main()
