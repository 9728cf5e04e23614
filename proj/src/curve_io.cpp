#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "flowlab/curve.hpp"

namespace flowlab {

namespace {

double shoelace_lift(const MarkerCurve& c) {
    const auto l = c.lift();
    const std::size_t n = l.size();
    const Vec2 w{static_cast<double>(c.winding()[0]), static_cast<double>(c.winding()[1])};
    double area = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 a = l[j];
        const Vec2 b = (j + 1 < n) ? l[j + 1] : l[0] + w;
        area -= 0.5 * (a.y + b.y) * (b.x - a.x);
    }
    return area;
}

// Parity bit stored per component: orientation of closed loops, normal
// direction for winding (lamella-type) components.
int inside_flag(const MarkerCurve& c) {
    if (c.winding()[0] == 0 && c.winding()[1] == 0) {
        return shoelace_lift(c) > 0.0 ? 1 : 0;
    }
    const Vec2 w{static_cast<double>(c.winding()[0]), static_cast<double>(c.winding()[1])};
    const Vec2 nrm = w.rot_cw();
    if (std::abs(nrm.y) > 1e-12) return nrm.y > 0 ? 1 : 0;
    return nrm.x > 0 ? 1 : 0;
}

}  // namespace

void write_curve_file(std::ostream& os, const BoundarySet& b) {
    os << "torus-curve v1 components=" << b.num_components() << "\n";
    char buf[64];
    for (const auto& c : b.components()) {
        os << "component n=" << c.size() << " winding=" << c.winding()[0] << ","
           << c.winding()[1] << " inside=" << inside_flag(c) << "\n";
        for (const auto& p : c.nodes()) {
            std::snprintf(buf, sizeof(buf), "%.17g %.17g", p.x1, p.x2);
            os << buf << "\n";
        }
    }
}

void write_curve_file(const std::string& path, const BoundarySet& b) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for writing: " + path);
    write_curve_file(os, b);
}

BoundarySet read_curve_file(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw BadValue("empty curve file");
    std::size_t ncomp = 0;
    {
        std::istringstream h(line);
        std::string magic, version, kv;
        h >> magic >> version >> kv;
        if (magic != "torus-curve" || version != "v1" || kv.rfind("components=", 0) != 0) {
            throw BadValue("bad curve file header: " + line);
        }
        ncomp = std::stoul(kv.substr(11));
    }
    std::vector<MarkerCurve> comps;
    comps.reserve(ncomp);
    for (std::size_t k = 0; k < ncomp; ++k) {
        if (!std::getline(is, line)) throw BadValue("truncated curve file");
        std::size_t n = 0;
        int w1 = 0, w2 = 0, inside = -1;
        {
            std::istringstream h(line);
            std::string tag, kv;
            h >> tag;
            if (tag != "component") throw BadValue("expected component line, got: " + line);
            while (h >> kv) {
                if (kv.rfind("n=", 0) == 0) {
                    n = std::stoul(kv.substr(2));
                } else if (kv.rfind("winding=", 0) == 0) {
                    const auto body = kv.substr(8);
                    const auto comma = body.find(',');
                    if (comma == std::string::npos) throw BadValue("bad winding: " + kv);
                    w1 = std::stoi(body.substr(0, comma));
                    w2 = std::stoi(body.substr(comma + 1));
                } else if (kv.rfind("inside=", 0) == 0) {
                    inside = std::stoi(kv.substr(7));
                } else {
                    throw BadValue("unknown component attribute: " + kv);
                }
            }
        }
        if (n < 8) throw TooFewNodes("component with fewer than 8 nodes");
        std::vector<TorusPoint> nodes(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::getline(is, line)) throw BadValue("truncated node list");
            std::istringstream ls(line);
            double a = 0, b2 = 0;
            if (!(ls >> a >> b2)) throw BadValue("bad node line: " + line);
            nodes[i] = TorusPoint(a, b2);
        }
        MarkerCurve mc(std::move(nodes));
        if (mc.winding()[0] != w1 || mc.winding()[1] != w2) {
            throw InvalidRegion("winding in file disagrees with node data");
        }
        if (inside != -1 && inside != inside_flag(mc)) {
            throw InvalidRegion("inside flag in file disagrees with orientation");
        }
        comps.push_back(std::move(mc));
    }
    return BoundarySet(std::move(comps));
}

BoundarySet read_curve_file_path(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open: " + path);
    return read_curve_file(is);
}

}  // namespace flowlab
