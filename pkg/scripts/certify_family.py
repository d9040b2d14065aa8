#!/usr/bin/env python3
"""
Batch certification of truncated relator families, one k_max at a time.
"""

import argparse
import sys
from pathlib import Path

from smallcancel.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, parse_rational
from smallcancel.config import get_settings
from smallcancel.errors import FamilyError, InputError
from smallcancel.models import ConstructionParams
from smallcancel.schemas import certificate_out
from smallcancel.services.cancellation import verify_cprime
from smallcancel.services.polish_group import materialize_family, read_group_spec
from smallcancel.services.relator_gen import write_manifest


def main(argv=None):
    """Certify C'(lambda) for k_max = k_min .. --kmax and report each step."""
    settings = get_settings()
    parser = argparse.ArgumentParser(description="Certify C'(lambda) for growing truncations of a group's family")
    parser.add_argument("group", type=Path, help="Group spec file")
    parser.add_argument("--kmax", type=int, default=settings.k_max, help="Largest k to certify")
    parser.add_argument("--n-rep", type=int, default=settings.n_rep, help="Repetition bound")
    parser.add_argument("--lambda", dest="lam", default=settings.lambda_target, help="Target lambda as p/q")
    parser.add_argument("--threads", type=int, default=settings.threads, help="Worker threads")
    parser.add_argument("--out-dir", type=Path, help="Write manifest and certificate JSON per k_max here")

    args = parser.parse_args(argv)

    try:
        lam = parse_rational(args.lam, "lambda")
        if not 0 < lam <= 1:
            raise InputError(f"lambda must lie in (0, 1], got {args.lam}")
        spec = read_group_spec(args.group)
    except (InputError, OSError) as e:
        print(f"❌ Error: {e}")
        sys.exit(EXIT_USAGE)

    failed = False
    try:
        for k_max in range(settings.k_min, args.kmax + 1):
            params = ConstructionParams(n_rep=args.n_rep, k_min=settings.k_min, k_max=k_max)
            print(f"🔄 Certifying {args.group.name} with k <= {k_max}, n_rep = {args.n_rep}")
            family = materialize_family(spec, params, threads=args.threads)
            certificate = verify_cprime(family, lam, threads=args.threads)

            status = "✅" if certificate.passed else "❌"
            print(f"{status} C'({args.lam}) {'holds' if certificate.passed else 'fails'}")
            print(f"   Base relators: {len(family.base_relators)}")
            print(f"   Members: {certificate.members}")
            print(f"   Max piece ratio: {certificate.max_piece_ratio}")
            print(f"   Min length: {certificate.min_length}")

            if args.out_dir is not None:
                args.out_dir.mkdir(parents=True, exist_ok=True)
                (args.out_dir / f"family-k{k_max}.txt").write_text(write_manifest(family))
                report = certificate_out(certificate, family)
                (args.out_dir / f"certificate-k{k_max}.json").write_text(report.model_dump_json(by_alias=True, indent=2))
                print(f"📁 Wrote manifest and certificate to {args.out_dir}")

            failed = failed or not certificate.passed
    except (InputError, FamilyError, OSError) as e:
        print(f"❌ Error during certification: {e}")
        sys.exit(EXIT_USAGE)

    sys.exit(EXIT_CHECK_FAILED if failed else EXIT_OK)


if __name__ == "__main__":
    main()
