#include "jns/grid_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace jns {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_grid(const GridFunction& f, std::ostream& os, bool binary) {
    const DomainSpec& d = f.domain();
    os << "jngrid v1 n=" << d.n << " m=" << d.m << " K=" << d.K
       << " order=" << std::max(f.moment_order(), 0);
    if (binary) {
        os << " bin\n";
        for (double v : f.values()) {
            char bytes[sizeof(double)];
            std::memcpy(bytes, &v, sizeof(double));
            os.write(bytes, sizeof(double));
        }
        return;
    }
    os << "\n";
    std::int64_t per_line = 0;
    for (std::size_t i = 0; i < f.values().size(); ++i) {
        os << fmt_double(f.values()[i]);
        if (++per_line == 8 || i + 1 == f.values().size()) {
            os << "\n";
            per_line = 0;
        } else {
            os << " ";
        }
    }
}

void write_grid_file(const GridFunction& f, const std::string& path, bool binary) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw error("cannot open grid file for writing: " + path);
    write_grid(f, os, binary);
}

GridFunction read_grid(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw error("malformed grid file: empty");
    std::istringstream header(line);
    std::string magic, version;
    header >> magic >> version;
    if (magic != "jngrid" || version != "v1")
        throw error("malformed grid file: expected 'jngrid v1' header");
    int n = -1, m = 0, K = -1, order = 0;
    bool binary = false;
    std::string tok;
    while (header >> tok) {
        if (tok == "bin") {
            binary = true;
        } else if (tok.rfind("n=", 0) == 0) {
            n = std::stoi(tok.substr(2));
        } else if (tok.rfind("m=", 0) == 0) {
            m = std::stoi(tok.substr(2));
        } else if (tok.rfind("K=", 0) == 0) {
            K = std::stoi(tok.substr(2));
        } else if (tok.rfind("order=", 0) == 0) {
            order = std::stoi(tok.substr(6));
        } else {
            throw error("malformed grid file: unknown header token '" + tok + "'");
        }
    }
    if (n < 1 || K < 0) throw error("malformed grid file: missing n= or K=");
    const DomainSpec d(n, m, K);
    std::vector<double> values(std::size_t(d.cell_count()));
    if (binary) {
        for (double& v : values) {
            char bytes[sizeof(double)];
            is.read(bytes, sizeof(double));
            if (!is) throw error("malformed grid file: truncated binary payload");
            std::memcpy(&v, bytes, sizeof(double));
        }
    } else {
        for (double& v : values)
            if (!(is >> v)) throw error("malformed grid file: truncated values");
    }
    GridFunction f(d, std::move(values));
    f.prepare_moments(order);
    return f;
}

GridFunction read_grid_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw error("cannot open grid file: " + path);
    return read_grid(is);
}

}  // namespace jns
