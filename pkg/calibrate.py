# Dev-only calibration: assemble the reference fortune-brave parse by hand,
# compare against search results under various configs/frequencies.
import sys
import time

from spalign import *
from spalign.alignment import bare_alignment
from spalign.grammar_io import load_grammar_file, parse_grammar
from spalign.render import render_alignment
from spalign.search import pairwise_align


def build_reference(g):
    new = g.make_new("f o r t u n e f a v o u r s t h e b r a v e".split())
    a = bare_alignment(new)
    # merge order chosen so every step hits what it should
    plan = [
        ("n-fortune", 7),  # f o r t u n e
        ("vr-favour", 6),  # f a v o u r
        ("v-favours", 3),  # Vr #Vr s
        ("d-the", 3),      # t h e
        ("n-brave", 5),    # b r a v e
        ("np", 2),         # N #N of fortune -> np instance (subject)
        ("np", 4),         # D #D N #N of the/brave
        ("vp", 4),         # V #V NP #NP
        ("s", 4),          # NP #NP VP #VP
    ]
    for pid, want in plan:
        p = g.pattern(pid)
        cands = pairwise_align(a, p, g, 50)
        cands = [h for h in cands if len(h.hits) == want]
        # prefer leftmost placement with the best delta
        best = max(cands, key=lambda h: (round(h.delta, 9), [-x for x, _ in h.hits]))
        a = merge(a, p, best.hits, g)
    assert validate_alignment(a, g) is None
    return a


def main(path):
    recs = load_grammar_file(path)
    g = build_grammar(recs)
    new = g.make_new("f o r t u n e f a v o u r s t h e b r a v e".split())
    ref = build_reference(g)
    rs = score(ref, g)
    print(f"reference: cd={rs.cd:.4f} bn={rs.bn:.4f} be={rs.be:.4f} cols={len(ref.columns)}")
    refkey = canonical_key(ref)

    for label, cfg in [
        ("default", SearchConfig()),
        ("wide", SearchConfig(beam_width=200, max_iterations=25)),
    ]:
        t0 = time.time()
        results = search(new, g, cfg)
        dt = time.time() - t0
        top, ts = results[0]
        match = canonical_key(top) == refkey
        print(f"[{label}] {dt:.2f}s top cd={ts.cd:.4f} cols={len(top.columns)} "
              f"matches_reference={match}")
        if not match:
            in_results = any(canonical_key(a) == refkey for a, _ in results)
            print(f"   reference in results: {in_results}")
            for a, s in results[:3]:
                pids = sorted(i.pattern_id for i in a.instances)
                print(f"   cd={s.cd:.4f} ninst={len(a.instances)} cols={len(a.columns)} {pids}")
    print(render_alignment(ref, g))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/spalign/corpus_data/fortune_brave.spg")
