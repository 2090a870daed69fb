#include "psb/owf.hpp"

#include <sstream>

#include "psb/error.hpp"
#include "psb/numeric.hpp"

namespace psb {

namespace {

Natural pow2(std::size_t bits) { return Natural(1) << bits; }

const DlParams& dl(const OwfIndex& i) { return std::get<DlParams>(i.params); }
const SquaringParams& squaring(const OwfIndex& i) { return std::get<SquaringParams>(i.params); }
const AjtaiParams& ajtai(const OwfIndex& i) { return std::get<AjtaiParams>(i.params); }
const MultParams& mult(const OwfIndex& i) { return std::get<MultParams>(i.params); }
const std::vector<OwfIndex>& components(const OwfIndex& i) {
    return std::get<std::vector<OwfIndex>>(i.params);
}

// Iterates valid domain elements in canonical scan order: ascending
// integers per family, tuples lexicographic (rightmost component fastest).
class DomainCursor {
public:
    explicit DomainCursor(const OwfIndex& index) : index_(&index) {
        if (index.family == Family::PRODUCT)
            for (const auto& c : components(index)) children_.emplace_back(c);
    }

    // Fills `out` with the next element; false when exhausted.
    bool next(DomainElement& out) {
        switch (index_->family) {
        case Family::DL: {
            const Natural limit = dl(*index_).p - 1; // Z_{p-1}, 0 included
            if (pos_ >= limit) return false;
            out.value = pos_;
            ++pos_;
            return true;
        }
        case Family::SQUARING: {
            const Natural& n = squaring(*index_).n;
            if (pos_ == 0) pos_ = 1;
            while (pos_ < n) {
                if (boost::multiprecision::gcd(pos_, n) == 1) {
                    out.value = pos_;
                    ++pos_;
                    return true;
                }
                ++pos_;
            }
            return false;
        }
        case Family::AJTAI: {
            const auto& p = ajtai(*index_);
            if (pos_ >= pow2(p.cols)) return false;
            out.value = encode_natural(pos_, p.cols);
            ++pos_;
            return true;
        }
        case Family::MULT: {
            const Natural limit = pow2(mult(*index_).bits);
            if (pos_ == 0) pos_ = 1;
            if (pos2_ == 0) pos2_ = 1;
            if (pos_ >= limit) return false;
            out.value = std::make_pair(pos_, pos2_);
            if (++pos2_ >= limit) {
                pos2_ = 1;
                ++pos_;
            }
            return true;
        }
        case Family::PRODUCT: {
            if (!started_) {
                started_ = true;
                tuple_.resize(children_.size());
                for (std::size_t i = 0; i < children_.size(); ++i)
                    if (!children_[i].next(tuple_[i])) return false;
                out.value = tuple_;
                return true;
            }
            // Odometer: advance rightmost, reset exhausted positions.
            for (std::size_t i = children_.size(); i-- > 0;) {
                if (children_[i].next(tuple_[i])) {
                    out.value = tuple_;
                    return true;
                }
                children_[i] = DomainCursor(components(*index_)[i]);
                if (!children_[i].next(tuple_[i])) return false;
            }
            return false;
        }
        }
        return false;
    }

private:
    const OwfIndex* index_;
    Natural pos_ = 0;
    Natural pos2_ = 0;
    bool started_ = false;
    std::vector<DomainCursor> children_;
    std::vector<DomainElement> tuple_;
};

void require(bool cond, const char* code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
    case Family::DL: return "DL";
    case Family::SQUARING: return "SQUARING";
    case Family::AJTAI: return "AJTAI";
    case Family::MULT: return "MULT";
    case Family::PRODUCT: return "PRODUCT";
    }
    return "?";
}

void AjtaiParams::validate(SeededRng& rng) const {
    require(rows >= 1 && cols >= 1 && q >= 2, "invalid-parameter", "empty Ajtai shape");
    require(matrix.size() == rows * cols, "invalid-parameter", "matrix shape mismatch");
    for (const auto& e : matrix)
        require(e < q, "invalid-parameter", "matrix entry not reduced mod q");
    if (toy_mode) return;
    require(is_probable_prime(q, 20, rng), "invalid-parameter", "honest Ajtai q must be prime");
    // n*log2(q) < m <= q / (2n^4), conservative integer form.
    Natural n4 = Natural(rows) * rows * rows * rows;
    require(Natural(rows) * bit_length(q) < cols, "invalid-parameter", "m too small: n log q >= m");
    require(Natural(cols) * 2 * n4 <= q, "invalid-parameter", "m too large: m > q/(2n^4)");
}

OwfIndex sample_index(Family family, std::size_t k, SeededRng& rng) {
    switch (family) {
    case Family::DL: {
        require(k >= 8, "parameter-too-small", "DL needs k >= 8");
        Natural p = gen_safe_prime(k, rng);
        Natural g = find_generator(p, rng);
        return {Family::DL, DlParams{p, g}};
    }
    case Family::SQUARING: {
        require(k >= 8 && k % 2 == 0, "parameter-too-small", "SQUARING needs even k >= 8");
        Natural p = gen_blum_prime(k / 2, rng);
        Natural q = gen_blum_prime(k / 2, rng);
        return {Family::SQUARING, SquaringParams{p * q}};
    }
    case Family::AJTAI: {
        require(k >= 4, "parameter-too-small", "AJTAI needs k >= 4");
        // Honest defaults; the Problem-A constraints force q >= 2n^4*m.
        return make_ajtai_index(4, 128, Natural(131101), false, rng);
    }
    case Family::MULT: {
        require(k >= 2, "parameter-too-small", "MULT needs k >= 2");
        return {Family::MULT, MultParams{k}};
    }
    case Family::PRODUCT:
        throw Error("invalid-parameter", "sample PRODUCT via amplify_direct_product");
    }
    throw Error("invalid-parameter", "unknown family");
}

OwfIndex make_ajtai_index(std::size_t rows, std::size_t cols, const Natural& q, bool toy_mode,
                          SeededRng& rng) {
    AjtaiParams p;
    p.rows = rows;
    p.cols = cols;
    p.q = q;
    p.toy_mode = toy_mode;
    p.matrix.reserve(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) p.matrix.push_back(rng.uniform_below(q));
    SeededRng check = rng.fork(0xa17a1);
    p.validate(check);
    return {Family::AJTAI, std::move(p)};
}

DomainElement sample_domain(const OwfIndex& index, SeededRng& rng) {
    switch (index.family) {
    case Family::DL:
        return {dl(index).p > 1 ? rng.uniform_below(dl(index).p - 1) : Natural(0)};
    case Family::SQUARING:
        return {rng.uniform_zn_star(squaring(index).n)};
    case Family::AJTAI:
        return {rng.next_bits(ajtai(index).cols)};
    case Family::MULT: {
        Natural limit = pow2(mult(index).bits);
        return {std::make_pair(rng.uniform_range(1, limit - 1), rng.uniform_range(1, limit - 1))};
    }
    case Family::PRODUCT: {
        std::vector<DomainElement> tuple;
        std::uint64_t label = 0;
        for (const auto& c : components(index)) {
            SeededRng child = rng.fork(0x70 + label++);
            tuple.push_back(sample_domain(c, child));
        }
        return {std::move(tuple)};
    }
    }
    throw Error("invalid-parameter", "unknown family");
}

Image evaluate(const OwfIndex& index, const DomainElement& x) {
    switch (index.family) {
    case Family::DL: {
        const auto* v = std::get_if<Natural>(&x.value);
        require(v != nullptr && *v < dl(index).p - 1, "out-of-domain", "DL domain is Z_{p-1}");
        return {mod_pow(dl(index).g, *v, dl(index).p)};
    }
    case Family::SQUARING: {
        const auto* v = std::get_if<Natural>(&x.value);
        const Natural& n = squaring(index).n;
        require(v != nullptr && *v >= 1 && *v < n && boost::multiprecision::gcd(*v, n) == 1,
                "out-of-domain", "SQUARING domain is Z_n^*");
        return {(*v * *v) % n};
    }
    case Family::AJTAI: {
        const auto* s = std::get_if<BitString>(&x.value);
        const auto& p = ajtai(index);
        require(s != nullptr && s->size() == p.cols, "out-of-domain", "AJTAI domain is {0,1}^m");
        std::vector<Natural> out(p.rows, 0);
        for (std::size_t row = 0; row < p.rows; ++row) {
            Natural acc = 0;
            for (std::size_t col = 0; col < p.cols; ++col)
                if ((*s)[col]) acc += p.matrix[row * p.cols + col];
            out[row] = acc % p.q;
        }
        return {std::move(out)};
    }
    case Family::MULT: {
        const auto* v = std::get_if<std::pair<Natural, Natural>>(&x.value);
        Natural limit = pow2(mult(index).bits);
        require(v != nullptr && v->first >= 1 && v->first < limit && v->second >= 1 &&
                    v->second < limit,
                "out-of-domain", "MULT domain is pairs of nonzero bits-length Naturals");
        return {v->first * v->second};
    }
    case Family::PRODUCT: {
        const auto* tuple = std::get_if<std::vector<DomainElement>>(&x.value);
        const auto& comps = components(index);
        require(tuple != nullptr && tuple->size() == comps.size(), "out-of-domain",
                "PRODUCT domain is a tuple per component");
        std::vector<Image> out;
        out.reserve(comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) out.push_back(evaluate(comps[i], (*tuple)[i]));
        return {std::move(out)};
    }
    }
    throw Error("invalid-parameter", "unknown family");
}

Natural domain_size(const OwfIndex& index) {
    switch (index.family) {
    case Family::DL: return dl(index).p - 1;
    case Family::SQUARING: return squaring(index).n; // scan length; gcd skips inside
    case Family::AJTAI: return pow2(ajtai(index).cols);
    case Family::MULT: {
        Natural side = pow2(mult(index).bits) - 1;
        return side * side;
    }
    case Family::PRODUCT: {
        Natural total = 1;
        for (const auto& c : components(index)) total *= domain_size(c);
        return total;
    }
    }
    throw Error("invalid-parameter", "unknown family");
}

DomainElement domain_element_at(const OwfIndex& index, const Natural& ordinal) {
    switch (index.family) {
    case Family::DL: {
        if (ordinal >= dl(index).p - 1)
            throw Error("invalid-parameter", "ordinal outside the exponent domain");
        return DomainElement{ordinal};
    }
    case Family::SQUARING: {
        // ordinal indexes the unit sequence 1, 2, ... skipping gcd > 1
        const Natural& n = squaring(index).n;
        Natural seen = 0;
        for (Natural v = 1; v < n; ++v) {
            if (boost::multiprecision::gcd(v, n) != 1) continue;
            if (seen == ordinal) return DomainElement{v};
            ++seen;
        }
        throw Error("invalid-parameter", "ordinal outside the unit group");
    }
    case Family::AJTAI: {
        const auto& p = ajtai(index);
        if (ordinal >= pow2(p.cols))
            throw Error("invalid-parameter", "ordinal outside the cube");
        return DomainElement{encode_natural(ordinal, p.cols)};
    }
    case Family::MULT: {
        const Natural side = pow2(mult(index).bits) - 1;
        if (ordinal >= side * side)
            throw Error("invalid-parameter", "ordinal outside the factor grid");
        return DomainElement{std::make_pair(Natural(ordinal / side + 1), Natural(ordinal % side + 1))};
    }
    case Family::PRODUCT: {
        // mixed radix, rightmost component fastest, matching the cursor
        const auto& comps = components(index);
        std::vector<DomainElement> tuple(comps.size());
        Natural rest = ordinal;
        for (std::size_t i = comps.size(); i-- > 0;) {
            Natural size = domain_size(comps[i]);
            tuple[i] = domain_element_at(comps[i], rest % size);
            rest /= size;
        }
        if (rest != 0) throw Error("invalid-parameter", "ordinal outside the product domain");
        return DomainElement{std::move(tuple)};
    }
    }
    throw Error("invalid-parameter", "unknown family");
}

std::optional<DomainElement> brute_force_invert(const OwfIndex& index, const Image& y,
                                                const Natural& bound) {
    if (bound > (Natural(1) << 24)) throw Error("refuse-brute-force", "bound exceeds 2^24");
    if (domain_size(index) > bound)
        throw Error("refuse-brute-force", "domain larger than stated bound");
    DomainCursor cursor(index);
    DomainElement x;
    while (cursor.next(x))
        if (evaluate(index, x) == y) return x;
    return std::nullopt;
}

std::size_t encoding_bits(const OwfIndex& index) {
    switch (index.family) {
    case Family::DL: return bit_length(dl(index).p);
    case Family::SQUARING: return bit_length(squaring(index).n);
    case Family::AJTAI: return ajtai(index).cols;
    case Family::MULT: return 2 * mult(index).bits;
    case Family::PRODUCT: {
        std::size_t total = 0;
        for (const auto& c : components(index)) total += encoding_bits(c);
        return total;
    }
    }
    throw Error("invalid-parameter", "unknown family");
}

BitString encode_domain(const OwfIndex& index, const DomainElement& x) {
    const std::size_t k = encoding_bits(index);
    switch (index.family) {
    case Family::DL:
    case Family::SQUARING:
        return encode_natural(std::get<Natural>(x.value), k);
    case Family::AJTAI:
        return std::get<BitString>(x.value);
    case Family::MULT: {
        const auto& [a, b] = std::get<std::pair<Natural, Natural>>(x.value);
        return encode_natural(a, k / 2).concat(encode_natural(b, k / 2));
    }
    case Family::PRODUCT: {
        BitString out;
        const auto& comps = components(index);
        const auto& tuple = std::get<std::vector<DomainElement>>(x.value);
        for (std::size_t i = 0; i < comps.size(); ++i)
            out = out.concat(encode_domain(comps[i], tuple[i]));
        return out;
    }
    }
    throw Error("invalid-parameter", "unknown family");
}

std::optional<DomainElement> decode_domain(const OwfIndex& index, const BitString& bits) {
    if (bits.size() != encoding_bits(index)) return std::nullopt;
    switch (index.family) {
    case Family::DL: {
        Natural v = decode_natural(bits);
        if (v >= dl(index).p - 1) return std::nullopt;
        return DomainElement{v};
    }
    case Family::SQUARING: {
        Natural v = decode_natural(bits);
        const Natural& n = squaring(index).n;
        if (v < 1 || v >= n || boost::multiprecision::gcd(v, n) != 1) return std::nullopt;
        return DomainElement{v};
    }
    case Family::AJTAI:
        return DomainElement{bits};
    case Family::MULT: {
        std::size_t half = bits.size() / 2;
        Natural a = decode_natural(bits.slice(0, half));
        Natural b = decode_natural(bits.slice(half, half));
        if (a < 1 || b < 1) return std::nullopt;
        return DomainElement{std::make_pair(a, b)};
    }
    case Family::PRODUCT: {
        std::vector<DomainElement> tuple;
        std::size_t at = 0;
        for (const auto& c : components(index)) {
            std::size_t len = encoding_bits(c);
            auto part = decode_domain(c, bits.slice(at, len));
            if (!part) return std::nullopt;
            tuple.push_back(std::move(*part));
            at += len;
        }
        return DomainElement{std::move(tuple)};
    }
    }
    return std::nullopt;
}

OwfIndex amplify_direct_product(Family family, std::size_t k, std::size_t t, SeededRng& rng) {
    require(t >= 1, "invalid-parameter", "amplification needs t >= 1");
    std::vector<OwfIndex> comps;
    comps.reserve(t);
    for (std::size_t i = 0; i < t; ++i) {
        SeededRng child = rng.fork(0xd9 + i);
        comps.push_back(sample_index(family, k, child));
    }
    if (t == 1) return comps.front();
    return {Family::PRODUCT, std::move(comps)};
}

std::string OwfIndex::serialize() const {
    std::ostringstream out;
    out << "family = " << family_name(family) << "\n";
    switch (family) {
    case Family::DL:
        out << "p = " << to_hex(dl(*this).p) << "\n";
        out << "g = " << to_hex(dl(*this).g) << "\n";
        break;
    case Family::SQUARING:
        out << "n = " << to_hex(squaring(*this).n) << "\n";
        break;
    case Family::AJTAI: {
        const auto& p = ajtai(*this);
        out << "n = " << to_hex(Natural(p.rows)) << "\n";
        out << "m = " << to_hex(Natural(p.cols)) << "\n";
        out << "q = " << to_hex(p.q) << "\n";
        out << "toy = " << (p.toy_mode ? "1 # INSECURE toy parameters" : "0") << "\n";
        out << "matrix =";
        for (const auto& e : p.matrix) out << " " << to_hex(e);
        out << "\n";
        break;
    }
    case Family::MULT:
        out << "bits = " << to_hex(Natural(mult(*this).bits)) << "\n";
        break;
    case Family::PRODUCT:
        throw Error("invalid-parameter", "PRODUCT indices are not serialized");
    }
    return out.str();
}

OwfIndex OwfIndex::deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string family_str;
    std::vector<std::pair<std::string, std::string>> fields;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "family") family_str = value;
        else fields.emplace_back(key, value);
    }
    auto field = [&](const std::string& key) -> std::string {
        for (const auto& [k, v] : fields)
            if (k == key) return v;
        throw Error("invalid-index-file", "missing field: " + key);
    };
    if (family_str == "DL")
        return {Family::DL, DlParams{natural_from_hex(field("p")), natural_from_hex(field("g"))}};
    if (family_str == "SQUARING")
        return {Family::SQUARING, SquaringParams{natural_from_hex(field("n"))}};
    if (family_str == "MULT")
        return {Family::MULT, MultParams{natural_from_hex(field("bits")).convert_to<std::size_t>()}};
    if (family_str == "AJTAI") {
        AjtaiParams p;
        p.rows = natural_from_hex(field("n")).convert_to<std::size_t>();
        p.cols = natural_from_hex(field("m")).convert_to<std::size_t>();
        p.q = natural_from_hex(field("q"));
        p.toy_mode = field("toy") == "1";
        std::istringstream ms(field("matrix"));
        std::string tok;
        while (ms >> tok) p.matrix.push_back(natural_from_hex(tok));
        if (p.matrix.size() != p.rows * p.cols)
            throw Error("invalid-index-file", "matrix shape mismatch");
        return {Family::AJTAI, std::move(p)};
    }
    throw Error("invalid-index-file", "unknown family: " + family_str);
}

std::string Image::serialize() const {
    if (const auto* n = std::get_if<Natural>(&value)) return to_hex(*n);
    if (const auto* vec = std::get_if<std::vector<Natural>>(&value)) {
        std::string out;
        for (std::size_t i = 0; i < vec->size(); ++i) {
            if (i) out += " ";
            out += to_hex((*vec)[i]);
        }
        return out;
    }
    const auto& tuple = std::get<std::vector<Image>>(value);
    std::string out;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += " ; ";
        out += tuple[i].serialize();
    }
    return out;
}

} // namespace psb
