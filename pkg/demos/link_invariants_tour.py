#!/usr/bin/env python3
"""Tour of the link diagram invariants.

The complement of a link is Helmholtz exactly when the link is trivially
split, and weakly Helmholtz exactly when the link is a homology boundary
link.  Linking numbers obstruct the latter; when they vanish, the Milnor
mu-bar invariants take over.  The Whitehead link is the classic example:
lk = 0, yet mubar(1,1,2,2) = +-1 certifies that its complement is not
weakly Helmholtz.
"""

from helmcut.groups import milnor_mubar
from helmcut.links import (
    diagram,
    diagram_names,
    link_helmholtz_verdict,
    linking_matrix,
    seifert_data,
)


def main() -> None:
    for name in diagram_names():
        D = diagram(name)
        s = seifert_data(D)
        print(f"== {name}: {D.component_count} component(s), "
              f"{len(D.crossings)} crossing(s)")
        print(f"  linking matrix: {linking_matrix(D)}")
        print(f"  Seifert algorithm: {s.seifert_circles} circles, genus {s.genus}")
        v = link_helmholtz_verdict(D)
        print(f"  Helmholtz complement:        {v.helmholtz}")
        print(f"  weakly Helmholtz complement: {v.weakly_helmholtz}")
        for cert in v.certificates:
            print(f"    certificate: {cert}")
        print()

    wh = diagram("whitehead")
    print("Milnor invariants of the Whitehead link (truncation q = 5):")
    for indices in [(1, 2), (1, 1, 2, 2), (1, 2, 2, 1), (2, 2, 1, 1), (2, 1, 1, 2)]:
        val = milnor_mubar(wh, indices, 5)
        print(f"  mubar{indices} = {val.residue}  (mu = {val.mu}, delta = {val.delta})")


if __name__ == "__main__":
    main()
