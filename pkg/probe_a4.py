import resource, time
from cwbound.combinatorics import partitions, semistandard_tableaux_with_content
from cwbound.blockgen_empty import word_pair_contents, empty_blocks_s2
from cwbound.orbits import registry

n, d, w = 17, 6, 7
reg = registry(n, d, w, 4)
print(f"registry built, {len(reg)} orbits", flush=True)
t0 = time.time()
blocks = empty_blocks_s2(reg)
rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1e6
print(f"s2 blocks: {len(blocks)} in {time.time()-t0:.1f}s, maxrss {rss:.2f} GB", flush=True)
sizes = sorted((b.size for b in blocks), reverse=True)
print("top sizes:", sizes[:8], flush=True)
