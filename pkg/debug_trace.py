# Dev-only: trace an intended merge plan through the search machinery.
import sys
from spalign.corpus import load_corpus_grammar
from spalign.alignment import bare_alignment, canonical_key, merge, validate_alignment
from spalign.search import pairwise_align, search, _lexical_hits, SearchConfig
from spalign.scoring import score, ROUND_DIGITS
from spalign.render import render_alignment


def best_hitset_for(a, p, g, want_syms=None, k=50):
    cands = pairwise_align(a, p, g, k)
    if want_syms is not None:
        # pick the candidate whose hit count matches and is admissible
        cands = [h for h in cands if len(h.hits) == want_syms]
    return cands


def trace(gname, sentence, plan):
    g = load_corpus_grammar(gname)
    a = bare_alignment(g.make_new(sentence.split()))
    s = score(a, g)
    print(f"--- {gname}: {sentence}")
    for pid, nhits in plan:
        p = g.pattern(pid)
        cands = best_hitset_for(a, p, g, nhits)
        if not cands:
            print(f"  {pid}: NO hitset with {nhits} hits")
            return
        hs = max(cands, key=lambda h: (round(h.delta, 9), [-x for x, _ in h.hits]))
        admissible = round(hs.delta, ROUND_DIGITS) > 0 or _lexical_hits(a, hs.hits)
        a2 = merge(a, p, hs.hits, g)
        s2 = score(a2, g)
        print(f"  {pid:16s} hits={len(hs.hits)} delta={hs.delta:+.3f} cd={s2.cd:.3f} "
              f"{'ok' if admissible else 'PRUNED'}")
        a = a2
        s = s2
    v = validate_alignment(a, g)
    print(f"  final cd={s.cd:.4f} ninst={len(a.instances)} valid={v}")
    # is it found by search?
    results = search(g.make_new(sentence.split()), g)
    keys = {canonical_key(x) for x, _ in results}
    print(f"  search top cd={results[0][1].cd:.4f}; plan-state in results: {canonical_key(a) in keys}")
    return a, g


if __name__ == "__main__":
    which = sys.argv[1] if len(sys.argv) > 1 else "pete"
    if which == "pete":
        plan = [
            ("n-pete", 1), ("v-envies", 1), ("n-martin", 1), ("cn-because", 1),
            ("pn-he", 1), ("v-is", 1), ("int-very", 1), ("adj-successful", 1),
            ("np-n", 2), ("np-n", 2), ("np-pn", 2),
            ("cl-a", 8), ("cl-b", 8), ("s", 6), ("br-because", 3),
        ]
        a, g = trace("pete_martin", "pete envies martin because he is very successful", plan)
        print(render_alignment(a, g))
    elif which == "counc":
        plan = [
            ("d-the", 1), ("a-city", 1), ("n-councilmen", 1), ("v-refused", 1),
            ("d-the", 1), ("n-demonstrators", 1), ("d-a", 1), ("n-permit", 1),
            ("pn-they", 1), ("v-feared", 1), ("n-violence", 1),
            ("np-dan", 6), ("np-dn", 4), ("np-dn", 4), ("np-pn", 2),
            ("sa", 8), ("sb", 4), ("br-peace", 5),
        ]
        trace("councilmen", "the city councilmen refused the demonstrators a permit because they feared violence", plan)
    elif which == "fb":
        g = load_corpus_grammar("fortune_brave")
        from calibrate import build_reference
        # rerun calibrate-style with admissibility reporting
        a = bare_alignment(g.make_new("f o r t u n e f a v o u r s t h e b r a v e".split()))
        plan = [("v-favours", 1), ("vr-favour", 3), ("n-fortune", 7), ("d-the", 3),
                ("n-brave", 5), ("np", 2), ("np", 4), ("vp", 4), ("s", 4)]
        for pid, nh in plan:
            p = g.pattern(pid)
            cands = [h for h in pairwise_align(a, p, g, 50) if len(h.hits) == nh]
            hs = max(cands, key=lambda h: (round(h.delta, 9), [-x for x, _ in h.hits]))
            adm = round(hs.delta, ROUND_DIGITS) > 0 or _lexical_hits(a, hs.hits)
            a = merge(a, p, hs.hits, g)
            print(f"  {pid:12s} hits={len(hs.hits)} delta={hs.delta:+.3f} cd={score(a, g).cd:.3f} {'ok' if adm else 'PRUNED'}")
        results = search(g.make_new("f o r t u n e f a v o u r s t h e b r a v e".split()), g)
        keys = {canonical_key(x) for x, _ in results}
        print(f"  search top cd={results[0][1].cd:.4f}; plan-state found: {canonical_key(a) in keys}")
