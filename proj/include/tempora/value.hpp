#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tempora/rational.hpp"

namespace tempora {

/// A single signal value: a symbol from a finite alphabet, an exact
/// rational, or a tuple of component values (for product spaces).
class Value {
  public:
    Value() : data_(std::string{}) {}
    Value(std::string symbol) : data_(std::move(symbol)) {}
    Value(const char* symbol) : data_(std::string(symbol)) {}
    Value(Rational r) : data_(r) {}
    Value(std::vector<Value> tuple) : data_(std::move(tuple)) {}

    bool is_symbol() const { return std::holds_alternative<std::string>(data_); }
    bool is_rational() const { return std::holds_alternative<Rational>(data_); }
    bool is_tuple() const { return std::holds_alternative<std::vector<Value>>(data_); }

    const std::string& symbol() const { return std::get<std::string>(data_); }
    const Rational& rational() const { return std::get<Rational>(data_); }
    const std::vector<Value>& tuple() const { return std::get<std::vector<Value>>(data_); }

    std::string str() const;

    friend bool operator==(const Value& a, const Value& b);
    friend bool operator<(const Value& a, const Value& b);

  private:
    std::variant<std::string, Rational, std::vector<Value>> data_;
};

struct ValueSpace;

/// Nonempty duplicate-free list of symbols.
struct FiniteAlphabet {
    std::vector<std::string> symbols;
};

/// Closed rational interval [lo, hi] of representable values.
struct RationalInterval {
    Rational lo;
    Rational hi;
};

struct ProductSpace {
    std::vector<ValueSpace> components;
};

/// W, Gamma and X all live here. Invariants are checked on construction.
struct ValueSpace {
    std::variant<FiniteAlphabet, RationalInterval, ProductSpace> kind;

    ValueSpace() : kind(FiniteAlphabet{{"?"}}) {}
    ValueSpace(FiniteAlphabet a);
    ValueSpace(RationalInterval i);
    ValueSpace(ProductSpace p);

    static ValueSpace alphabet(std::vector<std::string> symbols) {
        return ValueSpace(FiniteAlphabet{std::move(symbols)});
    }
    static ValueSpace interval(Rational lo, Rational hi) {
        return ValueSpace(RationalInterval{lo, hi});
    }
    static ValueSpace product(std::vector<ValueSpace> components) {
        return ValueSpace(ProductSpace{std::move(components)});
    }

    bool is_alphabet() const { return std::holds_alternative<FiniteAlphabet>(kind); }
    bool is_interval() const { return std::holds_alternative<RationalInterval>(kind); }
    bool is_product() const { return std::holds_alternative<ProductSpace>(kind); }

    const FiniteAlphabet& as_alphabet() const { return std::get<FiniteAlphabet>(kind); }
    const RationalInterval& as_interval() const { return std::get<RationalInterval>(kind); }
    const ProductSpace& as_product() const { return std::get<ProductSpace>(kind); }

    bool contains(const Value& v) const;

    friend bool operator==(const ValueSpace& a, const ValueSpace& b);
};

}  // namespace tempora
