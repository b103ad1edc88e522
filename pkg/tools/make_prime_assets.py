"""Regenerate the bundled prime-shadow assets (planar_code quadrangulations).

Prime shadows are filtered out of the exhaustive rooted-map generator, so
the assets do not depend on any external graph generator.  n=8 takes a few
minutes.

    python3 tools/make_prime_assets.py 3 8
    python3 tools/make_prime_assets.py 8 8 --from-pdstor primes_8.pdstor
"""
import argparse
import time
from pathlib import Path

from knotshadows.isomorphism import Pdstor
from knotshadows.planarcode import write_prime_shadows
from knotshadows.shadows import prime_shadows_brute_force

DATA = Path(__file__).resolve().parents[1] / "src" / "knotshadows" / "data"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("lo", type=int)
    ap.add_argument("hi", type=int)
    ap.add_argument("--from-pdstor", help="convert an existing pdstor file instead of generating")
    args = ap.parse_args()
    for n in range(args.lo, args.hi + 1):
        t = time.time()
        if args.from_pdstor:
            store = Pdstor.read(args.from_pdstor)
            codes = [c for c in store.sorted_codes() if c.n == n]
        else:
            codes = prime_shadows_brute_force(n).sorted_codes()
        (DATA / f"primes_{n}.planar").write_bytes(write_prime_shadows(codes))
        print(f"n={n}: {len(codes)} prime shadows ({time.time() - t:.1f} s)")


if __name__ == "__main__":
    main()
