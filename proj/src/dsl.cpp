#include "aflux/dsl.hpp"

#include <cctype>
#include <charconv>

#include "aflux/errors.hpp"

namespace aflux {

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool operator_char(char c) {
    return c == '>' || c == '<' || c == '=' || c == '%' || c == '!';
}

class DslParser {
  public:
    explicit DslParser(const std::string& text) : text_(text) {}

    FilterExpr parse() {
        FilterExpr e = parse_or();
        skip_space();
        if (pos_ < text_.size())
            throw ParseError("unexpected trailing input", pos_, {"'&'", "'|'", "end of input"});
        return e;
    }

  private:
    FilterExpr parse_or() {
        FilterExpr left = parse_and();
        while (accept('|')) left = combine(BoolOp::Or, std::move(left), parse_and());
        return left;
    }

    FilterExpr parse_and() {
        FilterExpr left = parse_unary();
        while (accept('&')) left = combine(BoolOp::And, std::move(left), parse_unary());
        return left;
    }

    FilterExpr parse_unary() {
        if (accept('~')) return negate(parse_unary());
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            FilterExpr inner = parse_or();
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw ParseError("unclosed parenthesis", pos_, {"')'"});
            ++pos_;
            return inner;
        }
        return parse_comparison();
    }

    FilterExpr parse_comparison() {
        skip_space();
        if (pos_ >= text_.size() || !name_start(text_[pos_]))
            throw ParseError("expected a keyword name", pos_,
                             {"keyword", "'('", "'~'"});
        std::size_t start = pos_;
        while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
        std::string keyword = text_.substr(start, pos_ - start);

        skip_space();
        std::size_t op_at = pos_;
        while (pos_ < text_.size() && operator_char(text_[pos_])) ++pos_;
        std::string op_text = text_.substr(op_at, pos_ - op_at);
        CompareOp op;
        if (op_text == ">")
            op = CompareOp::GT;
        else if (op_text == "<")
            op = CompareOp::LT;
        else if (op_text == "==")
            op = CompareOp::EQ;
        else if (op_text == "%")
            op = CompareOp::CONTAINS;
        else if (op_text.empty())
            throw ParseError("expected a comparison operator", op_at,
                             {"'>'", "'<'", "'=='", "'%'"});
        else
            throw ParseError("unknown operator '" + op_text + "'", op_at,
                             {"'>'", "'<'", "'=='", "'%'"});

        return compare(std::move(keyword), op, parse_operand());
    }

    Literal parse_operand() {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError("expected a value after the operator", pos_,
                             {"number", "double-quoted string"});
        char c = text_[pos_];
        if (c == '"') {
            std::size_t open = pos_++;
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
            if (pos_ >= text_.size())
                throw ParseError("unterminated string", open, {"closing '\"'"});
            std::string value = text_.substr(start, pos_ - start);
            ++pos_;
            return Literal::text(std::move(value));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            double value = 0;
            // from_chars takes no unary plus; accept one here.
            const char* first = text_.data() + pos_ + (c == '+' ? 1 : 0);
            const char* last = text_.data() + text_.size();
            auto [end, ec] = std::from_chars(first, last, value);
            if (ec == std::errc() && end != first) {
                pos_ = static_cast<std::size_t>(end - text_.data());
                return Literal::number(value);
            }
        }
        throw ParseError("expected a value", pos_, {"number", "double-quoted string"});
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

FilterExpr parse_filter_dsl(const std::string& text) { return DslParser(text).parse(); }

}  // namespace aflux
