"""
Conductance is not the whole story
==================================

Graph conductance ranks cuts by edges per node.  Entanglement notices
more: cuts with equal edge counts differ when one leaves more Schmidt
modes alive.  The kite (K_4 minus an edge) and the square (C_4) make the
point.
"""

from netentangle import entropy_conductance_table, make_family

for name in ("kite", "square", "star"):
    params = (4,) if name == "star" else ()
    report = entropy_conductance_table(make_family(name, *params), g=1.0)
    print(f"{name}: alpha = {report.alpha}, minimizers = {list(report.argmin)}")
    print("  part_a      cut  ratio  rank  S")
    for r in report.sorted_by("entropy", descending=True):
        print(
            f"  {str(r.part_a):10s}  {r.cut_edges:3d}  {str(r.ratio):5s}  "
            f"{r.schmidt_rank:4d}  {r.entropy.total:.6f}"
        )
