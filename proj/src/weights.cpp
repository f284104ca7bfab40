#include "permprof/weights.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "permprof/errors.hpp"

namespace permprof {

WeightSequence WeightSequence::ewens(const Rational& sigma) {
    if (sigma < 0) throw DomainError("ewens parameter must be >= 0");
    WeightSequence w;
    w.kind_ = WeightKind::ewens;
    w.ewens_sigma_ = sigma;
    w.ewens_sigma_d_ = to_double_nearest(sigma);
    return w;
}

WeightSequence WeightSequence::even_only() {
    WeightSequence w;
    w.kind_ = WeightKind::even_only;
    return w;
}

WeightSequence WeightSequence::odd_only() {
    WeightSequence w;
    w.kind_ = WeightKind::odd_only;
    return w;
}

WeightSequence WeightSequence::multiples_of(long a) {
    if (a < 1) throw DomainError("modulus must be >= 1");
    WeightSequence w;
    w.kind_ = WeightKind::multiples_of;
    w.modulus_ = a;
    return w;
}

WeightSequence WeightSequence::explicit_list(std::vector<Rational> values, TailRule tail,
                                             std::optional<Rational> mean) {
    if (values.empty()) throw InvalidSpecError("explicit weight list may not be empty");
    for (const auto& v : values)
        if (v < 0) throw DomainError("weights must be >= 0");
    WeightSequence w;
    w.kind_ = WeightKind::explicit_list;
    w.values_ = std::move(values);
    w.tail_ = tail;
    w.declared_mean_ = std::move(mean);
    w.values_d_.reserve(w.values_.size());
    for (const auto& v : w.values_) w.values_d_.push_back(to_double_nearest(v));
    return w;
}

Rational WeightSequence::sigma(long k) const {
    if (k < 1) throw DomainError("cycle length must be >= 1");
    switch (kind_) {
        case WeightKind::ewens:
            return ewens_sigma_;
        case WeightKind::even_only:
            return (k % 2 == 0) ? 1 : 0;
        case WeightKind::odd_only:
            return (k % 2 == 1) ? 1 : 0;
        case WeightKind::multiples_of:
            return (k % modulus_ == 0) ? 1 : 0;
        case WeightKind::explicit_list: {
            const long len = static_cast<long>(values_.size());
            if (k <= len) return values_[static_cast<size_t>(k - 1)];
            switch (tail_) {
                case TailRule::zero:
                    return 0;
                case TailRule::repeat_last:
                    return values_.back();
                case TailRule::cycle:
                    return values_[static_cast<size_t>((k - 1) % len)];
            }
        }
    }
    throw DomainError("unreachable weight kind");
}

double WeightSequence::sigma_d(long k) const {
    if (k < 1) throw DomainError("cycle length must be >= 1");
    switch (kind_) {
        case WeightKind::ewens:
            return ewens_sigma_d_;
        case WeightKind::even_only:
            return (k % 2 == 0) ? 1.0 : 0.0;
        case WeightKind::odd_only:
            return (k % 2 == 1) ? 1.0 : 0.0;
        case WeightKind::multiples_of:
            return (k % modulus_ == 0) ? 1.0 : 0.0;
        case WeightKind::explicit_list: {
            const long len = static_cast<long>(values_d_.size());
            if (k <= len) return values_d_[static_cast<size_t>(k - 1)];
            switch (tail_) {
                case TailRule::zero:
                    return 0.0;
                case TailRule::repeat_last:
                    return values_d_.back();
                case TailRule::cycle:
                    return values_d_[static_cast<size_t>((k - 1) % len)];
            }
        }
    }
    throw DomainError("unreachable weight kind");
}

const Rational& WeightSequence::ewens_parameter() const {
    if (kind_ != WeightKind::ewens) throw DomainError("not an ewens weight sequence");
    return ewens_sigma_;
}

const std::vector<Rational>& WeightSequence::explicit_values() const {
    if (kind_ != WeightKind::explicit_list) throw DomainError("not an explicit weight list");
    return values_;
}

std::optional<Rational> WeightSequence::mean() const {
    switch (kind_) {
        case WeightKind::ewens:
            return ewens_sigma_;
        case WeightKind::even_only:
        case WeightKind::odd_only:
            return make_rational(1, 2);
        case WeightKind::multiples_of:
            return make_rational(1, modulus_);
        case WeightKind::explicit_list:
            return declared_mean_;
    }
    return std::nullopt;
}

std::string WeightSequence::describe() const {
    switch (kind_) {
        case WeightKind::ewens:
            return "ewens:" + format_rational(ewens_sigma_);
        case WeightKind::even_only:
            return "even";
        case WeightKind::odd_only:
            return "odd";
        case WeightKind::multiples_of:
            return "mod:" + std::to_string(modulus_);
        case WeightKind::explicit_list: {
            std::ostringstream out;
            out << "explicit[";
            for (size_t i = 0; i < values_.size(); ++i) {
                if (i) out << ",";
                out << format_rational(values_[i]);
            }
            out << ";";
            switch (tail_) {
                case TailRule::zero: out << "zero"; break;
                case TailRule::repeat_last: out << "repeat-last"; break;
                case TailRule::cycle: out << "cycle"; break;
            }
            out << "]";
            return out.str();
        }
    }
    return "?";
}

WeightSequence parse_weight_spec(std::string_view spec) {
    if (spec == "even") return WeightSequence::even_only();
    if (spec == "odd") return WeightSequence::odd_only();
    if (spec.starts_with("ewens:")) {
        const Rational sigma = parse_rational(spec.substr(6));
        if (sigma < 0) throw DomainError("ewens parameter must be >= 0");
        return WeightSequence::ewens(sigma);
    }
    if (spec.starts_with("mod:")) {
        const Rational a = parse_rational(spec.substr(4));
        if (a.get_den() != 1) throw ParseError("modulus must be an integer");
        if (a < 1) throw DomainError("modulus must be >= 1");
        if (!a.get_num().fits_slong_p()) throw DomainError("modulus too large");
        return WeightSequence::multiples_of(a.get_num().get_si());
    }
    if (spec.starts_with("file:")) return load_weight_file(std::string(spec.substr(5)));
    throw ParseError("unrecognized weight spec: " + std::string(spec));
}

namespace {

Rational json_rational(const nlohmann::json& v, const char* what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
    throw ParseError(std::string(what) + " must be a \"p/q\" string or an integer");
}

}  // namespace

WeightSequence load_weight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open weight file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("weight file " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError("weight file must hold a JSON object");
    for (const auto& [key, _] : doc.items())
        if (key != "sigma" && key != "tail" && key != "mean")
            throw ParseError("weight file: unknown key \"" + key + "\"");
    if (!doc.contains("sigma") || !doc["sigma"].is_array() || doc["sigma"].empty())
        throw ParseError("weight file: \"sigma\" must be a non-empty array");

    std::vector<Rational> values;
    values.reserve(doc["sigma"].size());
    for (const auto& v : doc["sigma"]) values.push_back(json_rational(v, "sigma entry"));

    TailRule tail = TailRule::zero;
    if (doc.contains("tail")) {
        if (!doc["tail"].is_string()) throw ParseError("weight file: \"tail\" must be a string");
        const std::string t = doc["tail"].get<std::string>();
        if (t == "zero")
            tail = TailRule::zero;
        else if (t == "repeat-last")
            tail = TailRule::repeat_last;
        else if (t == "cycle")
            tail = TailRule::cycle;
        else
            throw ParseError("weight file: unknown tail rule \"" + t + "\"");
    }

    std::optional<Rational> mean;
    if (doc.contains("mean")) mean = json_rational(doc["mean"], "mean");

    return WeightSequence::explicit_list(std::move(values), tail, std::move(mean));
}

}  // namespace permprof
