#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "plwe/context.hpp"
#include "plwe/errors.hpp"
#include "plwe/ring.hpp"
#include "plwe/rng.hpp"

namespace plwe {

enum class OracleKind { plwe, uniform };

inline const char* to_string(OracleKind k) {
    return k == OracleKind::plwe ? "plwe" : "uniform";
}

inline OracleKind oracle_from_string(const std::string& s) {
    if (s == "plwe") return OracleKind::plwe;
    if (s == "uniform") return OracleKind::uniform;
    throw std::invalid_argument("unknown oracle kind: " + s);
}

/// How the sigma parameter is read: as the standard deviation of the error
/// Gaussian, or as its variance (stddev = sqrt(sigma)).
enum class SigmaMeaning { stddev, variance };

inline const char* to_string(SigmaMeaning m) {
    return m == SigmaMeaning::stddev ? "stddev" : "variance";
}

inline SigmaMeaning sigma_meaning_from_string(const std::string& s) {
    if (s == "stddev") return SigmaMeaning::stddev;
    if (s == "variance") return SigmaMeaning::variance;
    throw std::invalid_argument("unknown sigma meaning: " + s);
}

inline double effective_stddev(double sigma, SigmaMeaning meaning) {
    return meaning == SigmaMeaning::variance ? std::sqrt(sigma) : sigma;
}

/// Everything needed to regenerate the file bit-exactly from the seed, plus a
/// commitment to the secret (never the secret itself).
struct SampleSetHeader {
    std::uint64_t p = 0, n = 0, A = 0, q = 0, rho = 0;
    double sigma = 0;
    SigmaMeaning sigma_meaning = SigmaMeaning::stddev;
    OracleKind oracle = OracleKind::plwe;
    std::uint64_t seed = 0;
    std::uint64_t M = 0;
    std::string secret_commitment = "none";
};

struct SampleSet {
    SampleSetHeader header;
    std::vector<Sample> samples;
};

inline AttackContext context_from_header(const SampleSetHeader& h) {
    return AttackContext(FieldContext(h.q, h.p, h.A), h.n, h.rho);
}

/// Order-independent fingerprint of a secret's coefficient vector.
inline std::string secret_commitment(const RingElement& secret) {
    std::string joined;
    for (auto c : secret) {
        joined += std::to_string(c);
        joined += ',';
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a64(joined));
    return buf;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw io_error("sample set: bad integer for " + what + ": '" + s + "'");
    }
}

} // namespace detail

inline std::string header_line(const SampleSetHeader& h) {
    std::ostringstream os;
    os << "plwe-sample-set v1"
       << " p=" << h.p << " n=" << h.n << " A=" << h.A << " q=" << h.q << " rho=" << h.rho
       << " sigma=" << detail::format_double(h.sigma)
       << " sigma_meaning=" << to_string(h.sigma_meaning) << " oracle=" << to_string(h.oracle)
       << " seed=" << h.seed << " M=" << h.M << " secret_dist=uniform"
       << " secret=" << h.secret_commitment;
    return os.str();
}

inline SampleSetHeader parse_header_line(const std::string& line) {
    std::istringstream is(line);
    std::string magic, version;
    is >> magic >> version;
    if (magic != "plwe-sample-set" || version != "v1")
        throw io_error("sample set: bad magic/version in header");
    SampleSetHeader h;
    std::string token;
    bool saw_q = false, saw_p = false, saw_n = false, saw_A = false, saw_M = false;
    while (is >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw io_error("sample set: malformed header token '" + token + "'");
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        if (key == "p") { h.p = detail::parse_u64(value, "p"); saw_p = true; }
        else if (key == "n") { h.n = detail::parse_u64(value, "n"); saw_n = true; }
        else if (key == "A") { h.A = detail::parse_u64(value, "A"); saw_A = true; }
        else if (key == "q") { h.q = detail::parse_u64(value, "q"); saw_q = true; }
        else if (key == "rho") h.rho = detail::parse_u64(value, "rho");
        else if (key == "sigma") {
            try { h.sigma = std::stod(value); }
            catch (const std::exception&) { throw io_error("sample set: bad sigma '" + value + "'"); }
        }
        else if (key == "sigma_meaning") {
            try { h.sigma_meaning = sigma_meaning_from_string(value); }
            catch (const std::invalid_argument& e) { throw io_error(std::string("sample set: ") + e.what()); }
        }
        else if (key == "oracle") {
            try { h.oracle = oracle_from_string(value); }
            catch (const std::invalid_argument& e) { throw io_error(std::string("sample set: ") + e.what()); }
        }
        else if (key == "seed") h.seed = detail::parse_u64(value, "seed");
        else if (key == "M") { h.M = detail::parse_u64(value, "M"); saw_M = true; }
        else if (key == "secret") h.secret_commitment = value;
        else if (key == "secret_dist") { /* informational */ }
        else throw io_error("sample set: unknown header key '" + key + "'");
    }
    if (!(saw_p && saw_n && saw_A && saw_q && saw_M))
        throw io_error("sample set: header missing required fields");
    return h;
}

/// Text layout: one header line, then one line per sample with the a and b
/// coefficient vectors in decimal, separated by '|'. Written atomically via
/// a temp file plus rename.
inline void write_sample_set(const std::filesystem::path& path, const SampleSet& set) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw io_error("cannot open for writing: " + tmp.string());
        os << header_line(set.header) << '\n';
        for (const auto& s : set.samples) {
            for (std::size_t i = 0; i < s.a.size(); ++i) os << (i ? " " : "") << s.a[i];
            os << " |";
            for (std::size_t i = 0; i < s.b.size(); ++i) os << ' ' << s.b[i];
            os << '\n';
        }
        os.flush();
        if (!os) throw io_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw io_error("rename failed: " + tmp.string() + " -> " + path.string() + ": " +
                           ec.message());
}

inline SampleSet read_sample_set(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(is, line)) throw io_error("empty sample-set file: " + path.string());
    SampleSet set;
    set.header = parse_header_line(line);

    std::uint64_t N = 1;
    for (std::uint64_t i = 1; i < set.header.n; ++i) N *= set.header.p;
    N *= set.header.p - 1;

    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Sample s;
        std::string tok;
        bool in_b = false;
        while (ls >> tok) {
            if (tok == "|") { in_b = true; continue; }
            std::uint64_t v = detail::parse_u64(tok, "coefficient");
            if (v >= set.header.q) throw io_error("sample set: coefficient out of range");
            (in_b ? s.b : s.a).push_back(v);
        }
        if (!in_b || s.a.size() != N || s.b.size() != N)
            throw io_error("sample set: malformed sample line (expected " + std::to_string(N) +
                           " + " + std::to_string(N) + " coefficients)");
        set.samples.push_back(std::move(s));
    }
    if (set.samples.size() != set.header.M)
        throw io_error("sample set: header M=" + std::to_string(set.header.M) + " but " +
                       std::to_string(set.samples.size()) + " samples present");
    return set;
}

} // namespace plwe
