// The 27 lines of the Fermat cubic over GF(4), its 45 tritangent planes, and
// the quadrangle they form.

#include <iostream>

#include "surflines/gq.hpp"

using namespace surflines;

int main() {
  const auto F2 = make_field(2, 1);
  const SurfaceForm f = parse_form("x^3 + y^3 + z^3 + w^3", F2);
  const LineSet ls = enumerate_lines_on_surface(f, 2);
  std::cout << ls.size() << " lines over " << ls.field->spec() << "\n";
  for (const auto& l : ls.lines) std::cout << "  " << line_text_joined(l) << "\n";

  const auto mt = meet_table(ls);
  const auto pt = plane_table(ls, mt);
  std::cout << full_planes(pt, 3).size() << " planes with 3 lines\n";

  const auto lp = build_line_plane_structure(ls, pt, 3);
  const auto v = verify_gq(lp.st, {2, 4});
  std::cout << "GQ(2,4): " << (v.pass ? "yes" : "no, " + v.message) << "\n";
  const auto ts = triad_statistics(lp.st, 2);
  std::cout << ts.triads << " triads, " << ts.regular << " 3-regular\n";
}
