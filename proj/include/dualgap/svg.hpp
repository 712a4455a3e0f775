#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "dualgap/hull.hpp"
#include "dualgap/model.hpp"

// Static SVG figures for planar problems: shaded regions, lattice dots, hull
// outlines. Output is plain text with fixed two-decimal coordinates and no
// timestamps, so identical inputs give identical bytes.

namespace dualgap {

namespace detail {

inline std::string fmt2(double v) {
  if (!std::isfinite(v)) v = 0.0;
  if (v == 0.0) v = 0.0;  // flush -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

// World box mapped onto a pixel viewport, y pointing up.
class SvgCanvas {
 public:
  SvgCanvas(double x0, double x1, double y0, double y1, int width_px = 560)
      : x0_(x0), y0_(y0) {
    double spanx = x1 - x0, spany = y1 - y0;
    plot_w_ = width_px;
    scale_ = plot_w_ / spanx;
    plot_h_ = spany * scale_;
    w_ = plot_w_ + margin_l_ + margin_r_;
    h_ = static_cast<int>(plot_h_) + margin_t_ + margin_b_ + 1;
  }

  double px(double wx) const { return margin_l_ + (wx - x0_) * scale_; }
  double py(double wy) const { return margin_t_ + plot_h_ - (wy - y0_) * scale_; }

  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
               double fill_opacity, const std::string& stroke, double stroke_width) {
    if (pts.size() < 2) return;
    body_ += "<polygon points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i) body_ += ' ';
      body_ += detail::fmt2(px(pts[i].first)) + "," + detail::fmt2(py(pts[i].second));
    }
    body_ += "\" fill=\"" + fill + "\" fill-opacity=\"" + detail::fmt2(fill_opacity) +
             "\" stroke=\"" + stroke + "\" stroke-width=\"" + detail::fmt2(stroke_width) +
             "\"/>\n";
  }

  void line(double ax, double ay, double bx, double by, const std::string& stroke,
            double width, bool dotted = false) {
    body_ += "<line x1=\"" + detail::fmt2(px(ax)) + "\" y1=\"" + detail::fmt2(py(ay)) +
             "\" x2=\"" + detail::fmt2(px(bx)) + "\" y2=\"" + detail::fmt2(py(by)) +
             "\" stroke=\"" + stroke + "\" stroke-width=\"" + detail::fmt2(width) + "\"";
    if (dotted) body_ += " stroke-dasharray=\"2,4\"";
    body_ += "/>\n";
  }

  void circle(double wx, double wy, double r_px, const std::string& fill) {
    body_ += "<circle cx=\"" + detail::fmt2(px(wx)) + "\" cy=\"" + detail::fmt2(py(wy)) +
             "\" r=\"" + detail::fmt2(r_px) + "\" fill=\"" + fill + "\"/>\n";
  }

  void text(double wx, double wy, const std::string& s, const std::string& anchor = "middle",
            int size = 11, const std::string& fill = "black") {
    body_ += "<text x=\"" + detail::fmt2(px(wx)) + "\" y=\"" + detail::fmt2(py(wy)) +
             "\" font-size=\"" + std::to_string(size) + "\" font-family=\"sans-serif\"" +
             " text-anchor=\"" + anchor + "\" fill=\"" + fill + "\">" + s + "</text>\n";
  }

  std::string finish() const {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(w_) + "\" height=\"" + std::to_string(h_) +
                      "\" viewBox=\"0 0 " + std::to_string(w_) + " " + std::to_string(h_) +
                      "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += body_;
    out += "</svg>\n";
    return out;
  }

 private:
  double x0_, y0_, scale_, plot_w_, plot_h_;
  int w_, h_;
  int margin_l_ = 38, margin_r_ = 14, margin_t_ = 12, margin_b_ = 30;
  std::string body_;
};

namespace detail {

// tick spacing 1, 2 or 5 times a power of ten, aiming for about six ticks
inline double tick_step(double span) {
  double raw = span / 6.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double r = raw / mag;
  double s = r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0;
  return s * mag;
}

inline void draw_frame(SvgCanvas& cv, const Box2& box) {
  double x0 = box.xlo.to_double(), x1 = box.xhi.to_double();
  double y0 = box.ylo.to_double(), y1 = box.yhi.to_double();
  // axes where visible, else the low box edges
  double ax = (x0 <= 0 && 0 <= x1) ? 0 : x0;
  double ay = (y0 <= 0 && 0 <= y1) ? 0 : y0;
  cv.line(x0, ay, x1, ay, "black", 1.2);
  cv.line(ax, y0, ax, y1, "black", 1.2);
  double sx = tick_step(x1 - x0), sy = tick_step(y1 - y0);
  double tick = (y1 - y0) / 120.0;
  for (double t = std::ceil(x0 / sx) * sx; t <= x1 + sx / 2; t += sx) {
    if (std::abs(t) < sx / 2 && ax == 0) continue;
    cv.line(t, ay - tick, t, ay + tick, "black", 1.0);
    char lab[32];
    std::snprintf(lab, sizeof lab, "%g", t);
    cv.text(t, ay - 4.5 * tick, lab);
  }
  double tickx = (x1 - x0) / 120.0;
  for (double t = std::ceil(y0 / sy) * sy; t <= y1 + sy / 2; t += sy) {
    if (std::abs(t) < sy / 2 && ay == 0) continue;
    cv.line(ax - tickx, t, ax + tickx, t, "black", 1.0);
    char lab[32];
    std::snprintf(lab, sizeof lab, "%g", t);
    cv.text(ax - 2.2 * tickx, t - 0.8 * tick, lab, "end");
  }
}

// clip the box to the Ge side of every row; Eq rows cut from both sides and
// can leave a segment
inline std::vector<Pt2> region_polygon(const std::vector<Row>& rows, const Box2& box) {
  std::vector<Pt2> v = {{box.xlo, box.ylo}, {box.xhi, box.ylo},
                        {box.xhi, box.yhi}, {box.xlo, box.yhi}};
  for (const Row& r : rows) {
    if (r.coeffs.size() != 2) continue;
    QVec a = {r.coeffs[0], r.coeffs[1]};
    if (r.sense == Sense::Ge || r.sense == Sense::Eq)
      v = clip_halfplane(v, Halfplane{a, r.rhs});
    if (r.sense == Sense::Le || r.sense == Sense::Eq)
      v = clip_halfplane(v, Halfplane{{-a[0], -a[1]}, -r.rhs});
    if (v.empty()) break;
  }
  return v;
}

inline std::vector<std::pair<double, double>> to_doubles(const std::vector<Pt2>& v) {
  std::vector<std::pair<double, double>> out;
  out.reserve(v.size());
  for (const Pt2& p : v) out.push_back({p.x.to_double(), p.y.to_double()});
  return out;
}

inline bool same_box_side(const Pt2& p, const Pt2& q, const Box2& box) {
  return (p.x == box.xlo && q.x == box.xlo) || (p.x == box.xhi && q.x == box.xhi) ||
         (p.y == box.ylo && q.y == box.ylo) || (p.y == box.yhi && q.y == box.yhi);
}

// stroke only the edges that are genuine facets, not box cuts
inline void stroke_region(SvgCanvas& cv, const std::vector<Pt2>& v, const Box2& box,
                          const std::string& color, double width) {
  if (v.size() < 2) return;
  for (size_t i = 0; i < v.size(); ++i) {
    const Pt2& p = v[i];
    const Pt2& q = v[(i + 1) % v.size()];
    if (v.size() == 2 && i == 1) break;
    if (same_box_side(p, q, box)) continue;
    cv.line(p.x.to_double(), p.y.to_double(), q.x.to_double(), q.y.to_double(), color, width);
  }
}

inline std::vector<Row> piece_rows_with_flags(const LatticeSetSpec& X, size_t idx) {
  std::vector<Row> rows = X.pieces[idx].rows;
  for (int i = 0; i < X.dim; ++i)
    if (i < static_cast<int>(X.nonneg.size()) && X.nonneg[i]) {
      Row r;
      r.coeffs.assign(X.dim, Quad(0));
      r.coeffs[i] = Quad(1);
      r.sense = Sense::Ge;
      r.rhs = Quad(0);
      rows.push_back(r);
    }
  return rows;
}

}  // namespace detail

// Figure for a planar problem: the lattice set's region in pink with its
// boundary in black, the coupling rows' feasible side in light blue, integer
// grid in pale gray with the points of X darker, and the hull polygon on top.
inline std::string hull_figure_svg(const Problem& p, const Box2& box, const Polytope2D& hull,
                                   const std::vector<Point>& xpts) {
  SvgCanvas cv(box.xlo.to_double(), box.xhi.to_double(), box.ylo.to_double(),
               box.yhi.to_double());

  if (!p.coupling.rows.empty()) {
    auto cp = detail::region_polygon(p.coupling.rows, box);
    cv.polygon(detail::to_doubles(cp), "rgb(173,216,230)", 0.5, "none", 0);
  }
  if (p.lattice.kind != LatticeSetSpec::Kind::FiniteList) {
    for (size_t i = 0; i < p.lattice.pieces.size(); ++i) {
      auto rp = detail::region_polygon(detail::piece_rows_with_flags(p.lattice, i), box);
      cv.polygon(detail::to_doubles(rp), "rgb(255,182,193)", 0.5, "none", 0);
      detail::stroke_region(cv, rp, box, "black", 1.6);
    }
  }

  // integer grid, then the lattice points that are actually in X
  long gx0 = static_cast<long>(std::ceil(box.xlo.to_double() - 1e-9));
  long gx1 = static_cast<long>(std::floor(box.xhi.to_double() + 1e-9));
  long gy0 = static_cast<long>(std::ceil(box.ylo.to_double() - 1e-9));
  long gy1 = static_cast<long>(std::floor(box.yhi.to_double() + 1e-9));
  if ((gx1 - gx0) * (gy1 - gy0) <= 10000) {
    for (long gx = gx0; gx <= gx1; ++gx)
      for (long gy = gy0; gy <= gy1; ++gy)
        cv.circle(double(gx), double(gy), 1.1, "rgb(200,200,200)");
  }
  for (const Point& pt : xpts)
    if (pt.size() == 2)
      cv.circle(pt[0].convert_to<double>(), pt[1].convert_to<double>(), 1.9, "rgb(90,90,90)");

  if (!hull.vertices.empty()) {
    cv.polygon(detail::to_doubles(hull.vertices), "rgb(70,130,180)", 0.25, "rgb(25,60,110)",
               1.8);
    for (const Pt2& v : hull.vertices)
      cv.circle(v.x.to_double(), v.y.to_double(), 2.6, "rgb(25,60,110)");
  }

  detail::draw_frame(cv, box);
  return cv.finish();
}

}  // namespace dualgap
