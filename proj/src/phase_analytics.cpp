#include "finphase/phase_analytics.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "finphase/io.hpp"

namespace finphase {

void GridSpec::validate() const
{
    if (!(x_min < x_max) || !(y_min < y_max))
        throw Error(ErrorCode::InvalidGrid, "grid extent must satisfy min < max on both axes");
    if (nx < 1 || ny < 1)
        throw Error(ErrorCode::InvalidGrid, "grid needs at least one bin per axis");
}

GridSpec GridSpec::refined(int factor) const
{
    GridSpec g = *this;
    g.nx *= factor;
    g.ny *= factor;
    return g;
}

namespace {

// Bin index on [lo, hi] with n cells; -1 when outside.
int bin_index(double v, double lo, double hi, int n)
{
    if (!(v >= lo && v <= hi))
        return -1;
    if (v == hi)
        return n - 1;
    const int i = static_cast<int>((v - lo) / (hi - lo) * n);
    return std::min(i, n - 1);
}

} // namespace

PhaseHistogram bin_phase(std::span<const PhasePoint> points, const GridSpec& grid)
{
    grid.validate();
    PhaseHistogram h;
    h.grid = grid;
    h.counts = CountMatrix::Zero(grid.nx, grid.ny);
    for (const auto& p : points) {
        ++h.total;
        const int ix = bin_index(p.x, grid.x_min, grid.x_max, grid.nx);
        const int iy = bin_index(p.y, grid.y_min, grid.y_max, grid.ny);
        if (ix < 0 || iy < 0) {
            ++h.out_of_range;
            continue;
        }
        ++h.counts(ix, iy);
    }
    return h;
}

double entropy(const PhaseHistogram& hist) { return entropy_of_counts(hist.counts); }

double entropy_1d(std::span<const double> values, double lo, double hi, int bins)
{
    std::vector<PhasePoint> pts;
    pts.reserve(values.size());
    for (double v : values)
        pts.push_back({v, 0.0});
    GridSpec g{lo, hi, -1.0, 1.0, bins, 1};
    return entropy(bin_phase(pts, g));
}

TailMetrics tail_metrics(std::span<const PhasePoint> points)
{
    Eigen::ArrayXd x(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i)
        x[static_cast<Eigen::Index>(i)] = points[i].x;
    return tail_metrics_of(x);
}

void write_phase_csv(std::ostream& os, std::span<const PhasePoint> points)
{
    os << "firm_id,x,y\n";
    for (std::size_t i = 0; i < points.size(); ++i)
        os << i << ',' << io::format_double(points[i].x) << ',' << io::format_double(points[i].y) << '\n';
}

std::vector<PhasePoint> read_phase_csv(std::istream& is)
{
    std::vector<PhasePoint> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (io::trim(line).empty() || line[0] == '#')
            continue;
        const auto f = io::split(line);
        if (!header) {
            if (f.size() != 3 || f[0] != "firm_id" || f[1] != "x" || f[2] != "y")
                throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected header firm_id,x,y");
            header = true;
            continue;
        }
        if (f.size() != 3)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 3 fields");
        io::parse_int(f[0], line_no);
        out.push_back({io::parse_double(f[1], line_no), io::parse_double(f[2], line_no)});
    }
    if (!header)
        throw Error(ErrorCode::ParseError, "missing header firm_id,x,y");
    return out;
}

void write_histogram_csv(std::ostream& os, const PhaseHistogram& hist)
{
    const auto& g = hist.grid;
    os << "#x_min," << io::format_double(g.x_min) << '\n'
       << "#x_max," << io::format_double(g.x_max) << '\n'
       << "#y_min," << io::format_double(g.y_min) << '\n'
       << "#y_max," << io::format_double(g.y_max) << '\n'
       << "#nx," << g.nx << '\n'
       << "#ny," << g.ny << '\n'
       << "#total," << hist.total << '\n'
       << "#out_of_range," << hist.out_of_range << '\n';
    // one line per y row, bottom row first
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            if (ix)
                os << ',';
            os << hist.counts(ix, iy);
        }
        os << '\n';
    }
}

PhaseHistogram read_histogram_csv(std::istream& is)
{
    PhaseHistogram h;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<std::int64_t>> rows;
    int seen_meta = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (io::trim(line).empty())
            continue;
        const auto f = io::split(line);
        if (line[0] == '#') {
            if (f.size() != 2)
                throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": malformed metadata");
            const auto& k = f[0];
            if (k == "#x_min") h.grid.x_min = io::parse_double(f[1], line_no);
            else if (k == "#x_max") h.grid.x_max = io::parse_double(f[1], line_no);
            else if (k == "#y_min") h.grid.y_min = io::parse_double(f[1], line_no);
            else if (k == "#y_max") h.grid.y_max = io::parse_double(f[1], line_no);
            else if (k == "#nx") h.grid.nx = static_cast<int>(io::parse_int(f[1], line_no));
            else if (k == "#ny") h.grid.ny = static_cast<int>(io::parse_int(f[1], line_no));
            else if (k == "#total") h.total = io::parse_int(f[1], line_no);
            else if (k == "#out_of_range") h.out_of_range = io::parse_int(f[1], line_no);
            else throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown key " + k);
            ++seen_meta;
            continue;
        }
        std::vector<std::int64_t> row;
        for (const auto& c : f)
            row.push_back(io::parse_int(c, line_no));
        rows.push_back(std::move(row));
    }
    if (seen_meta != 8)
        throw Error(ErrorCode::ParseError, "histogram metadata incomplete");
    h.grid.validate();
    if (static_cast<int>(rows.size()) != h.grid.ny)
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(h.grid.ny) + " count rows");
    h.counts = CountMatrix::Zero(h.grid.nx, h.grid.ny);
    for (int iy = 0; iy < h.grid.ny; ++iy) {
        if (static_cast<int>(rows[iy].size()) != h.grid.nx)
            throw Error(ErrorCode::ParseError, "count row " + std::to_string(iy) + " has wrong width");
        for (int ix = 0; ix < h.grid.nx; ++ix)
            h.counts(ix, iy) = rows[iy][ix];
    }
    if (h.counts.sum() + h.out_of_range != h.total)
        throw Error(ErrorCode::ParseError, "counts plus out_of_range do not equal total");
    return h;
}

} // namespace finphase
