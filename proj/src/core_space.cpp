#include "sunrot/core_space.hpp"

namespace sunrot {

SunGraphShape::SunGraphShape(std::vector<BranchShape> branches)
    : branches_(std::move(branches)) {
    for (size_t i = 0; i < branches_.size(); ++i) {
        const auto& b = branches_[i];
        if (b.attach < Rat(0) || b.attach >= Rat(1))
            throw std::domain_error("shape: attach must lie in [0,1)");
        if (b.length <= Rat(0))
            throw std::domain_error("shape: branch length must be positive");
        for (size_t j = 0; j < i; ++j)
            if (branches_[j].attach == b.attach)
                throw std::domain_error("shape: attach values must be distinct");
    }
}

std::optional<std::pair<int, long long>> SunGraphShape::attachment_at(
    const Rat& x) const {
    for (size_t i = 0; i < branches_.size(); ++i) {
        Rat d = x - branches_[i].attach;
        if (d.is_integer())
            return std::make_pair(static_cast<int>(i), d.floor_ll());
    }
    return std::nullopt;
}

std::string Chart::str() const {
    if (is_line()) return "R";
    return "X" + std::to_string(branch) + "+" + std::to_string(copy);
}

Point Point::line(const Rat& x) {
    Point p;
    p.x_ = x;
    p.br_ = -1;
    return p;
}

Point Point::branch(const SunGraphShape& shape, int i, const Rat& t,
                    long long m) {
    if (i < 0 || i >= shape.branch_count())
        throw std::domain_error("point: branch index out of range");
    if (t < Rat(0) || t > shape.branch(i).length)
        throw std::domain_error("point: branch coordinate out of range");
    if (t == Rat(0)) return line(shape.branch(i).attach + Rat(m));
    Point p;
    p.x_ = t;
    p.br_ = i;
    p.m_ = m;
    return p;
}

const Rat& Point::x() const {
    if (!on_line()) throw std::domain_error("point: not a line point");
    return x_;
}
int Point::branch_index() const {
    if (on_line()) throw std::domain_error("point: not a branch point");
    return br_;
}
const Rat& Point::t() const {
    if (on_line()) throw std::domain_error("point: not a branch point");
    return x_;
}
long long Point::copy() const {
    if (on_line()) throw std::domain_error("point: not a branch point");
    return m_;
}

bool operator==(const Point& a, const Point& b) {
    if (a.br_ != b.br_) return false;
    if (a.br_ >= 0 && a.m_ != b.m_) return false;
    return a.x_ == b.x_;
}

std::string Point::str() const {
    if (on_line()) return "R(" + x_.str() + ")";
    return "X" + std::to_string(br_) + "(" + x_.str() + ")+" +
           std::to_string(m_);
}

TSegment::TSegment(Chart c, Rat a, Rat b) : chart(c) {
    if (a <= b) {
        lo = a;
        hi = b;
    } else {
        lo = b;
        hi = a;
    }
    if (!chart.is_line() && lo < Rat(0))
        throw std::domain_error("segment: negative branch coordinate");
}

std::string TSegment::str() const {
    return chart.str() + "[" + lo.str() + "," + hi.str() + "]";
}

Point Point::translated(long long dm) const {
    Point q = *this;
    if (q.br_ < 0)
        q.x_ = q.x_ + Rat(dm);
    else
        q.m_ += dm;
    return q;
}

Point translate(const Point& p, long long m) { return p.translated(m); }

TSegment translate(const TSegment& s, long long m) {
    if (s.chart.is_line())
        return TSegment(Chart::line(), s.lo + Rat(m), s.hi + Rat(m));
    return TSegment(Chart::br(s.chart.branch, s.chart.copy + m), s.lo, s.hi);
}

Rat retract_line(const SunGraphShape& shape, const Point& p) {
    if (p.on_line()) return p.x();
    return shape.branch(p.branch_index()).attach + Rat(p.copy());
}

std::vector<Chart> charts_of(const SunGraphShape& shape, const Point& p) {
    std::vector<Chart> out;
    if (p.on_line()) {
        out.push_back(Chart::line());
        if (auto at = shape.attachment_at(p.x()))
            out.push_back(Chart::br(at->first, at->second));
    } else {
        out.push_back(Chart::br(p.branch_index(), p.copy()));
    }
    return out;
}

std::optional<Rat> coord_in_chart(const SunGraphShape& shape, const Point& p,
                                  const Chart& c) {
    if (c.is_line()) {
        if (p.on_line()) return p.x();
        return std::nullopt;
    }
    if (!p.on_line()) {
        if (p.branch_index() == c.branch && p.copy() == c.copy) return p.t();
        return std::nullopt;
    }
    if (p.x() == shape.branch(c.branch).attach + Rat(c.copy)) return Rat(0);
    return std::nullopt;
}

Point point_from_chart(const SunGraphShape& shape, const Chart& c,
                       const Rat& u) {
    if (c.is_line()) return Point::line(u);
    return Point::branch(shape, c.branch, u, c.copy);
}

bool point_in_segment(const SunGraphShape& shape, const Point& p,
                      const TSegment& s) {
    auto u = coord_in_chart(shape, p, s.chart);
    return u && *u >= s.lo && *u <= s.hi;
}

int branch_compare(const SunGraphShape& shape, const Point& a,
                   const Point& b) {
    auto ca = charts_of(shape, a);
    auto cb = charts_of(shape, b);
    for (const auto& x : ca) {
        if (x.is_line()) continue;
        for (const auto& y : cb) {
            if (x == y) {
                Rat ta = *coord_in_chart(shape, a, x);
                Rat tb = *coord_in_chart(shape, b, x);
                if (ta < tb) return -1;
                if (tb < ta) return 1;
                return 0;
            }
        }
    }
    if (a.on_line() && b.on_line() && a.x() == b.x()) return 0;
    throw std::domain_error("branch_compare: points share no branch copy");
}

}  // namespace sunrot
