#!/usr/bin/env python3
"""
Schema export script.

Writes the JSON schema of the verify-all report and of the orbifold model
configuration, for consumers of ``--format json`` output.
"""

import argparse
import json
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import OrbifoldConfig
from src.core.models import VerificationReport


def main():
    """Export JSON schemas."""
    parser = argparse.ArgumentParser(description="Export nilg2 JSON schemas")
    parser.add_argument(
        "--output", default="docs/", help="Output directory (default: docs/)"
    )
    args = parser.parse_args()

    print("nilg2 - Schema Export")
    print("=" * 60)

    output_dir = Path(args.output)
    output_dir.mkdir(parents=True, exist_ok=True)

    schemas = {
        "report.schema.json": VerificationReport.model_json_schema(),
        "orbifold.schema.json": OrbifoldConfig.model_json_schema(),
    }
    for name, schema in schemas.items():
        path = output_dir / name
        path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(f"✓ {path}")

    print("=" * 60)
    return 0


if __name__ == "__main__":
    sys.exit(main())
