#include "klab/finite_field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace klab {

namespace {

// Minimal polynomial helpers on coefficient vectors over a base field.
// Vectors are low-degree-first with no trailing zeros.

void vec_trim(std::vector<ffe>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::vector<ffe> vec_mul(const Field& F, const std::vector<ffe>& a, const std::vector<ffe>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<ffe> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    vec_trim(r);
    return r;
}

// Remainder of a modulo monic m.
std::vector<ffe> vec_mod(const Field& F, std::vector<ffe> a, const std::vector<ffe>& m) {
    vec_trim(a);
    while (a.size() >= m.size()) {
        ffe lead = a.back();
        size_t shift = a.size() - m.size();
        if (lead != 0)
            for (size_t i = 0; i < m.size(); ++i)
                a[shift + i] = F.sub(a[shift + i], F.mul(lead, m[i]));
        a.pop_back();
        vec_trim(a);
    }
    return a;
}

bool vec_is_irreducible(const Field& F, const std::vector<ffe>& f); // below

// Enumerate monic polynomials of degree d over F in canonical order (the
// non-leading coefficient vector as an integer low-degree-first).
std::vector<ffe> monic_by_index(const Field& F, int d, std::uint64_t idx) {
    std::vector<ffe> c(static_cast<size_t>(d) + 1, 0);
    for (int i = 0; i < d; ++i) {
        c[static_cast<size_t>(i)] = idx % F.size();
        idx /= F.size();
    }
    c[static_cast<size_t>(d)] = 1;
    return c;
}

bool vec_is_irreducible(const Field& F, const std::vector<ffe>& f) {
    int d = static_cast<int>(f.size()) - 1;
    if (d <= 0) return false;
    if (d == 1) return true;
    // Trial division by monic polynomials of degree <= d/2, ascending; the
    // first divisor found is necessarily irreducible, so finding any divisor
    // disproves irreducibility.
    for (int e = 1; 2 * e <= d; ++e) {
        std::uint64_t count = 1;
        for (int i = 0; i < e; ++i) count *= F.size();
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<ffe> g = monic_by_index(F, e, idx);
            if (vec_mod(F, f, g).empty()) return false;
        }
    }
    return true;
}

} // namespace

FieldPtr Field::prime(int p) {
    if (p < 2) throw degenerate_error("BadField", "characteristic must be >= 2");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw degenerate_error("BadField", "characteristic must be prime");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->deg_ = 1;
    f->size_ = static_cast<std::uint64_t>(p);
    f->base_size_ = static_cast<std::uint64_t>(p);
    return f;
}

FieldPtr Field::extension(FieldPtr base, std::vector<ffe> modulus, std::string gen_name) {
    if (!base) throw degenerate_error("BadField", "extension needs a base field");
    vec_trim(modulus);
    if (modulus.size() < 2) throw degenerate_error("BadField", "modulus must have degree >= 1");
    if (modulus.back() != 1) throw degenerate_error("BadField", "modulus must be monic");
    for (ffe c : modulus)
        if (c >= base->size()) throw degenerate_error("BadField", "modulus coefficient out of range");
    if (!vec_is_irreducible(*base, modulus))
        throw degenerate_error("BadField", "modulus is reducible");
    int d = static_cast<int>(modulus.size()) - 1;
    // Desk-scale guard: element codes must fit comfortably in 64 bits.
    long double sz = 1;
    for (int i = 0; i < d; ++i) sz *= static_cast<long double>(base->size());
    if (sz > 1e17L) throw limit_error("field too large for desk scale");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = base->p();
    f->deg_ = d;
    f->base_ = std::move(base);
    f->base_size_ = f->base_->size();
    f->size_ = 1;
    for (int i = 0; i < d; ++i) f->size_ *= f->base_size_;
    f->modulus_ = std::move(modulus);
    f->gen_name_ = std::move(gen_name);
    return f;
}

FieldPtr Field::make(int p, int m) {
    FieldPtr fp = prime(p);
    if (m == 1) return fp;
    if (m < 1) throw degenerate_error("BadField", "extension degree must be >= 1");
    std::uint64_t count = 1;
    for (int i = 0; i < m; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<ffe> c = monic_by_index(*fp, m, idx);
        if (vec_is_irreducible(*fp, c)) return extension(fp, c);
    }
    throw degenerate_error("BadField", "no irreducible modulus found"); // unreachable
}

FieldPtr Field::make(int p, int m, const std::vector<ffe>& modulus) {
    FieldPtr fp = prime(p);
    if (m == 1 && modulus.empty()) return fp;
    return extension(fp, modulus);
}

int Field::deg_over_prime() const {
    return base_ ? deg_ * base_->deg_over_prime() : 1;
}

bool Field::same(const Field& o) const {
    if (this == &o) return true;
    if (p_ != o.p_ || deg_ != o.deg_ || modulus_ != o.modulus_) return false;
    if (!base_ && !o.base_) return true;
    if (!base_ || !o.base_) return false;
    return base_->same(*o.base_);
}

std::vector<ffe> Field::digits(ffe a) const {
    std::vector<ffe> d(static_cast<size_t>(deg_));
    for (int i = 0; i < deg_; ++i) {
        d[static_cast<size_t>(i)] = a % base_size_;
        a /= base_size_;
    }
    return d;
}

ffe Field::from_digits(const std::vector<ffe>& d) const {
    ffe a = 0;
    for (size_t i = d.size(); i-- > 0;) a = a * base_size_ + d[i];
    return a;
}

ffe Field::add(ffe a, ffe b) const {
    if (!base_) return (a + b) % size_;
    ffe r = 0, radix = 1;
    for (int i = 0; i < deg_; ++i) {
        r += base_->add(a % base_size_, b % base_size_) * radix;
        a /= base_size_;
        b /= base_size_;
        radix *= base_size_;
    }
    return r;
}

ffe Field::neg(ffe a) const {
    if (!base_) return a == 0 ? 0 : size_ - a;
    ffe r = 0, radix = 1;
    for (int i = 0; i < deg_; ++i) {
        r += base_->neg(a % base_size_) * radix;
        a /= base_size_;
        radix *= base_size_;
    }
    return r;
}

ffe Field::sub(ffe a, ffe b) const { return add(a, neg(b)); }

ffe Field::mul(ffe a, ffe b) const {
    if (!base_) return (a * b) % size_;
    if (a == 0 || b == 0) return 0;
    std::vector<ffe> va = digits(a), vb = digits(b);
    std::vector<ffe> r = vec_mod(*base_, vec_mul(*base_, va, vb), modulus_);
    r.resize(static_cast<size_t>(deg_), 0);
    return from_digits(r);
}

ffe Field::pow(ffe a, long long n) const {
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    ffe r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

ffe Field::inv(ffe a) const {
    if (a == 0) throw degenerate_error("DivisionByZero", "inverse of zero");
    // |F| is tiny at desk scale; a^(|F|-2) is simplest and branch-free.
    return pow(a, static_cast<long long>(size_) - 2);
}

ffe Field::from_int(long long n) const {
    long long r = n % p_;
    if (r < 0) r += p_;
    ffe x = 0;
    for (long long i = 0; i < r; ++i) x = add(x, 1);
    return x;
}

std::string Field::to_string(ffe a) const {
    if (!base_) return std::to_string(a);
    if (a == 0) return "0";
    std::vector<ffe> d = digits(a);
    std::ostringstream out;
    bool first = true;
    for (size_t i = d.size(); i-- > 0;) {
        if (d[i] == 0) continue;
        if (!first) out << "+";
        first = false;
        std::string coef = base_->to_string(d[i]);
        if (i == 0) {
            out << coef;
        } else {
            if (coef != "1") out << coef << "*";
            out << gen_name_;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

namespace {
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}
} // namespace

bool is_qth_power_ext(const Field& F, ffe x, int q, long long f) {
    if (x == 0) throw degenerate_error("ZeroResidue", "q-th power residue test rejects zero");
    if (f < 1) throw degenerate_error("BadDegree", "extension degree must be >= 1");
    std::uint64_t S = F.size();
    std::uint64_t M = static_cast<std::uint64_t>(q) * (S - 1);
    // S^f - 1 mod q(S-1); divisibility by q read off the residue.
    std::uint64_t r = powmod_u64(S, static_cast<std::uint64_t>(f), M);
    r = (r + M - 1) % M;
    if (r % static_cast<std::uint64_t>(q) != 0) return true; // q does not divide S^f - 1
    std::uint64_t N = (r / static_cast<std::uint64_t>(q)) % (S - 1);
    return F.pow(x, static_cast<long long>(N)) == 1;
}

ffe find_q_nonresidue(const Field& F, int q) {
    if ((F.size() - 1) % static_cast<std::uint64_t>(q) != 0)
        throw degenerate_error("NoNonresidue", "q does not divide |F| - 1; every element is a q-th power");
    for (ffe x = 1; x < F.size(); ++x)
        if (!is_qth_power_ext(F, x, q, 1)) return x;
    throw degenerate_error("NoNonresidue", "no nonresidue found"); // unreachable for prime q | |F|-1
}

namespace {
// Parses the u-polynomial syntax of field specs: "u^2+u+1", coefficients
// integers; low-level because it runs before any Field exists.
std::vector<ffe> parse_modulus(const std::string& s, int p) {
    std::vector<long long> coeffs;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    int sign = 1;
    skip_ws();
    while (i < s.size()) {
        long long c = 1;
        bool saw_num = false, saw_u = false;
        long long e = 0;
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            c = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                c = c * 10 + (s[i++] - '0');
            saw_num = true;
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
        if (i < s.size() && s[i] == 'u') {
            ++i;
            saw_u = true;
            e = 1;
            skip_ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip_ws();
                if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                    throw parse_error("expected exponent in modulus");
                e = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    e = e * 10 + (s[i++] - '0');
            }
        }
        if (!saw_num && !saw_u) throw parse_error("bad term in modulus");
        if (static_cast<size_t>(e) + 1 > coeffs.size()) coeffs.resize(static_cast<size_t>(e) + 1, 0);
        coeffs[static_cast<size_t>(e)] += sign * c;
        skip_ws();
        if (i >= s.size()) break;
        if (s[i] == '+') sign = 1;
        else if (s[i] == '-') sign = -1;
        else throw parse_error("unexpected character in modulus");
        ++i;
        skip_ws();
    }
    std::vector<ffe> out(coeffs.size());
    for (size_t k = 0; k < coeffs.size(); ++k) {
        long long r = coeffs[k] % p;
        if (r < 0) r += p;
        out[k] = static_cast<ffe>(r);
    }
    return out;
}
} // namespace

FieldPtr parse_field_spec(const std::string& text) {
    int p = 0, m = 1;
    std::string mod;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(pos, end - pos);
        size_t eq = item.find('=');
        if (eq == std::string::npos) throw parse_error("field spec items must be key=value");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        auto strip = [](std::string& s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        };
        strip(key);
        strip(val);
        if (key == "p") p = std::stoi(val);
        else if (key == "m") m = std::stoi(val);
        else if (key == "mod") mod = val;
        else throw parse_error("unknown field spec key: " + key);
        pos = end + 1;
    }
    if (p == 0) throw parse_error("field spec must set p");
    if (mod.empty()) return Field::make(p, m);
    std::vector<ffe> coeffs = parse_modulus(mod, p);
    if (static_cast<int>(coeffs.size()) != m + 1)
        throw parse_error("modulus degree does not match m");
    return Field::make(p, m, coeffs);
}

std::string field_spec_string(const Field& F) {
    std::ostringstream out;
    out << "p=" << F.p() << ",m=" << F.deg_over_prime();
    if (!F.is_prime_field()) {
        out << ",mod=";
        const auto& md = F.modulus();
        bool first = true;
        for (size_t i = md.size(); i-- > 0;) {
            if (md[i] == 0) continue;
            if (!first) out << "+";
            first = false;
            if (i == 0) out << md[i];
            else {
                if (md[i] != 1) out << md[i] << "*";
                out << "u";
                if (i > 1) out << "^" << i;
            }
        }
    }
    return out.str();
}

} // namespace klab
