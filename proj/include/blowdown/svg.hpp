#pragma once

// Static SVG of the sweep: region shading, reference lines, points by route.

#include <sstream>
#include <string>
#include <vector>

#include "blowdown/geography.hpp"

namespace blowdown {

struct SvgOptions {
  long width = 800;
  long height = 600;
};

namespace detail {

// Fixed two-decimal rendering of an exact rational.
inline std::string fixed2(const Rational& v) {
  Integer scaled = v.get_num() * 100;
  Integer q;
  Integer den = v.get_den();
  mpz_fdiv_q(q.get_mpz_t(), Integer(2 * scaled + den).get_mpz_t(), Integer(2 * den).get_mpz_t());
  const bool neg = q < 0;
  Integer a = abs(q);
  Integer whole = a / 100, frac = a % 100;
  std::string f = frac.get_str();
  if (f.size() < 2) f = "0" + f;
  return (neg ? "-" : "") + whole.get_str() + "." + f;
}

class Plot {
 public:
  Plot(long width, long height, long x_span, long y_span)
      : w_(width), h_(height), xs_(x_span), ys_(y_span) {}

  std::string px(const Rational& x) const { return fixed2(Rational(kMargin) + x * (w_ - 2 * kMargin) / xs_); }
  std::string py(const Rational& y) const { return fixed2(Rational(h_ - kMargin) - y * (h_ - 2 * kMargin) / ys_); }

  static constexpr long kMargin = 60;

 private:
  long w_, h_, xs_, ys_;
};

}  // namespace detail

inline std::string geography_svg(long x_max, const std::vector<SweepRow>& rows, const SvgOptions& opt = {}) {
  if (opt.width < 200 || opt.height < 200) throw DomainError("svg: width and height must be >= 200");
  const long xs = x_max + 1;
  const long ys = (5 * x_max + 1) / 2;
  detail::Plot P(opt.width, opt.height, xs, ys);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
     << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Region 0 < x-3 <= c <= (5x-4)/2 for 3 <= x <= x_max.
  const Rational lo(3), hi(x_max);
  auto top = [](const Rational& x) -> Rational { return Rational(5, 2) * x - 2; };
  auto half = [](const Rational& x) -> Rational { return x - 3; };
  os << "<polygon fill=\"#dde8f5\" stroke=\"none\" points=\"" << P.px(lo) << ',' << P.py(half(lo)) << ' '
     << P.px(hi) << ',' << P.py(half(hi)) << ' ' << P.px(hi) << ',' << P.py(top(hi)) << ' ' << P.px(lo) << ','
     << P.py(top(lo)) << "\"/>\n";

  // Axes with integer ticks.
  const long m = detail::Plot::kMargin;
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << m << "\" y1=\"" << opt.height - m << "\" x2=\"" << opt.width - m << "\" y2=\""
     << opt.height - m << "\"/>\n";
  os << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << opt.height - m << "\"/>\n";
  os << "</g>\n";
  const long xstep = xs > 20 ? 5 : 1;
  const long ystep = ys > 40 ? 10 : (ys > 10 ? 5 : 1);
  os << "<g font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
  for (long x = 0; x <= xs; x += xstep) {
    os << "<text x=\"" << P.px(x) << "\" y=\"" << opt.height - m + 16 << "\">" << x << "</text>\n";
  }
  for (long y = 0; y <= ys; y += ystep) {
    os << "<text x=\"" << m - 16 << "\" y=\"" << P.py(y) << "\">" << y << "</text>\n";
  }
  os << "<text x=\"" << opt.width / 2 << "\" y=\"" << opt.height - 20 << "\">chi_h</text>\n";
  os << "<text x=\"20\" y=\"" << opt.height / 2 << "\" transform=\"rotate(-90 20 " << opt.height / 2
     << ")\">c1^2</text>\n";
  os << "</g>\n";

  // Reference lines over 3 <= x <= x_max + 1.
  struct Line {
    const char* id;
    const char* color;
    Rational slope, offset;
  };
  const Line lines[] = {{"half-noether", "#2a9d8f", 1, -3}, {"noether", "#e9c46a", 2, -6},
                        {"upper", "#e76f51", Rational(5, 2), -2}};
  const Rational x0(3), x1(xs);
  for (const auto& l : lines) {
    Rational y0 = l.slope * x0 + l.offset, y1 = l.slope * x1 + l.offset;
    Rational xe = x1;
    if (y1 > ys) {
      xe = (Rational(ys) - l.offset) / l.slope;
      y1 = ys;
    }
    os << "<line id=\"" << l.id << "\" stroke=\"" << l.color << "\" stroke-width=\"1.5\" x1=\"" << P.px(x0)
       << "\" y1=\"" << P.py(y0) << "\" x2=\"" << P.px(xe) << "\" y2=\"" << P.py(y1) << "\"/>\n";
  }

  os << "<g stroke=\"none\">\n";
  for (const auto& r : rows) {
    const char* fill = !r.pass ? "#d62828" : (r.route == Route::construction2 ? "#264653" : "#8d5fd3");
    os << "<circle cx=\"" << P.px(r.x) << "\" cy=\"" << P.py(r.c) << "\" r=\"2.5\" fill=\"" << fill << "\"/>\n";
  }
  os << "</g>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace blowdown
