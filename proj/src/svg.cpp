#include "horosark/svg.hpp"

#include <sstream>

#include "horosark/report.hpp"

namespace horosark {

namespace {

constexpr int kWidth = 720, kHeight = 540, kMargin = 50;

struct Mapper {
  Strip strip;
  std::string x(const Rat& delta) const {
    Rat t = (delta - strip.dmin) / (strip.dmax - strip.dmin);
    return (Rat(kMargin) + t * Rat(kWidth - 2 * kMargin)).decimal(20);
  }
  std::string y(const Rat& eps) const {
    Rat t = (strip.emax - eps) / (strip.emax - strip.emin);
    return (Rat(kMargin) + t * Rat(kHeight - 2 * kMargin)).decimal(20);
  }
};

const char* wall_color(WallKind k) {
  switch (k) {
    case WallKind::Fibration: return "#cc0000";
    case WallKind::Divisorial: return "#0044cc";
    case WallKind::Flip: return "#000000";
    case WallKind::Isomorphism: return "#888888";
  }
  return "#000000";
}

const char* wall_class(WallKind k) {
  switch (k) {
    case WallKind::Fibration: return "wall fib";
    case WallKind::Divisorial: return "wall div";
    case WallKind::Flip: return "wall flip";
    case WallKind::Isomorphism: return "wall iso";
  }
  return "wall";
}

const char* cell_fill(int i) {
  static const char* palette[] = {"#f2f7ff", "#fff6ec", "#f0fff0", "#fdf0ff",
                                  "#fffde8", "#eefafc", "#f7f0ea", "#f2f2f2"};
  return palette[i % 8];
}

}  // namespace

std::string emit_svg(const FixtureFile& fx, const TwoParamFamily& f, const Decomposition& dec) {
  VarietyNamer namer(f, fx.labels);
  Mapper m{dec.strip};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  int ci = 0;
  for (const auto& cell : dec.cells) {
    for (const auto& poly : cell.parts) {
      os << "<polygon class=\"cell\" fill=\"" << cell_fill(ci) << "\" stroke=\"none\" points=\"";
      for (size_t i = 0; i < poly.size(); ++i) {
        if (i) os << " ";
        os << m.x(poly[i].delta) << "," << m.y(poly[i].eps);
      }
      os << "\"/>\n";
    }
    ++ci;
  }

  for (const auto& w : dec.walls) {
    ParamPoint mid{(w.from.delta + w.to.delta) / Rat(2), (w.from.eps + w.to.eps) / Rat(2)};
    WallClassification wc = classify_wall_sampled(f, mid, w.min_circuit, w.rel);
    os << "<line class=\"" << wall_class(wc.kind) << "\" stroke=\"" << wall_color(wc.kind)
       << "\" stroke-width=\"" << (w.on_boundary ? "2.5" : "1.5") << "\" x1=\"" << m.x(w.from.delta)
       << "\" y1=\"" << m.y(w.from.eps) << "\" x2=\"" << m.x(w.to.delta) << "\" y2=\""
       << m.y(w.to.eps) << "\"/>\n";
  }

  for (const auto& p : dec.points) {
    bool u0 = p.cls.kind == PointClassKind::U0;
    os << "<circle class=\"" << (u0 ? "anchor" : "point-u0p") << "\" cx=\"" << m.x(p.q.delta)
       << "\" cy=\"" << m.y(p.q.eps) << "\" r=\"4\" fill=\"" << (u0 ? "black" : "white")
       << "\" stroke=\"black\"/>\n";
    if (u0) {
      os << "<text class=\"anchor-label\" x=\"" << m.x(p.q.delta) << "\" y=\"" << m.y(p.q.eps)
         << "\" dx=\"6\" dy=\"14\" font-size=\"11\">L=" << row_ids(f, p.cls.minimal)
         << " (" << p.q.delta.str() << "," << p.q.eps.str() << ")</text>\n";
    }
  }

  for (const auto& cell : dec.cells) {
    ParamPoint c = polygon_centroid(cell.parts[0]);
    os << "<text class=\"cell-label\" x=\"" << m.x(c.delta) << "\" y=\"" << m.y(c.eps)
       << "\" text-anchor=\"middle\" font-size=\"13\">" << namer.name(cell.label) << "</text>\n";
  }

  // frame and corner coordinates
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
     << "\" height=\"" << kHeight - 2 * kMargin
     << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  os << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16
     << "\" font-size=\"11\">delta=" << dec.strip.dmin.str() << ", eps=" << dec.strip.emin.str()
     << "</text>\n";
  os << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin - 6
     << "\" text-anchor=\"end\" font-size=\"11\">delta=" << dec.strip.dmax.str()
     << ", eps=" << dec.strip.emax.str() << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace horosark
