#include "cogmap/curation.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace cogmap {

namespace {

enum class TokenKind {
    Ident,
    String,
    Number,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Pipe,
    Colon,
    Equals,
    Amp,
    Arrow,
    End,
};

const char* token_kind_name(TokenKind kind) {
    switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::String: return "string";
    case TokenKind::Number: return "number";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Pipe: return "'|'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Equals: return "'='";
    case TokenKind::Amp: return "'&'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::End: return "end of input";
    }
    return "?";
}

struct Token {
    TokenKind kind;
    std::string text;  // decoded for strings, literal otherwise
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (true) {
            skip_trivia();
            if (pos_ >= text_.size()) {
                tokens.push_back({TokenKind::End, "", line_, column_});
                return tokens;
            }
            tokens.push_back(next_token());
        }
    }

private:
    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    Token next_token() {
        int line = line_, column = column_;
        char c = text_[pos_];
        if (c == '"') return lex_string();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string ident;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ident += text_[pos_];
                advance();
            }
            return {TokenKind::Ident, ident, line, column};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string number;
            bool seen_dot = false;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                    (text_[pos_] == '.' && !seen_dot))) {
                seen_dot = seen_dot || text_[pos_] == '.';
                number += text_[pos_];
                advance();
            }
            return {TokenKind::Number, number, line, column};
        }
        switch (c) {
        case '{': advance(); return {TokenKind::LBrace, "{", line, column};
        case '}': advance(); return {TokenKind::RBrace, "}", line, column};
        case '(': advance(); return {TokenKind::LParen, "(", line, column};
        case ')': advance(); return {TokenKind::RParen, ")", line, column};
        case '|': advance(); return {TokenKind::Pipe, "|", line, column};
        case ':': advance(); return {TokenKind::Colon, ":", line, column};
        case '=': advance(); return {TokenKind::Equals, "=", line, column};
        case '&': advance(); return {TokenKind::Amp, "&", line, column};
        case '-':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                advance();
                advance();
                return {TokenKind::Arrow, "->", line, column};
            }
            break;
        default: break;
        }
        throw ParseError(location(line, column) + ": unexpected character '" + std::string(1, c) +
                             "'",
                         line, column);
    }

    Token lex_string() {
        int line = line_, column = column_;
        advance();  // opening quote
        std::string value;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '"') {
                advance();
                return {TokenKind::String, value, line, column};
            }
            if (c == '\n') break;
            if (c == '\\') {
                advance();
                if (pos_ >= text_.size()) break;
                char esc = text_[pos_];
                switch (esc) {
                case '"': value += '"'; break;
                case '\\': value += '\\'; break;
                case 'n': value += '\n'; break;
                case 't': value += '\t'; break;
                default:
                    throw ParseError(location(line_, column_) + ": unknown escape '\\" +
                                         std::string(1, esc) + "' in string",
                                     line_, column_);
                }
                advance();
                continue;
            }
            value += c;
            advance();
        }
        throw ParseError(location(line, column) + ": unterminated string", line, column);
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    static std::string location(int line, int column) {
        return std::to_string(line) + ":" + std::to_string(column);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    CurationSpec run() {
        while (peek().kind != TokenKind::End) {
            parse_statement();
        }
        finish();
        return std::move(spec_);
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    Token expect(TokenKind kind, const std::string& context) {
        const Token& token = peek();
        if (token.kind != kind) {
            fail(token, std::string("expected ") + token_kind_name(kind) + " " + context +
                            ", found " + token_kind_name(token.kind) +
                            (token.text.empty() ? "" : " '" + token.text + "'"));
        }
        ++pos_;
        return token;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message) const {
        throw ParseError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + message,
                         at.line, at.column);
    }

    void parse_statement() {
        const Token& token = peek();
        if (token.kind != TokenKind::Ident) {
            fail(token, "expected a statement keyword (alias, variable, interaction, deny, set)");
        }
        if (token.text == "alias") return parse_alias();
        if (token.text == "variable") return parse_variable();
        if (token.text == "interaction") return parse_interaction();
        if (token.text == "deny") return parse_deny();
        if (token.text == "set") return parse_config();
        fail(token, "unknown statement keyword '" + token.text +
                        "' (expected alias, variable, interaction, deny, or set)");
    }

    void parse_alias() {
        Token keyword = expect(TokenKind::Ident, "for alias");
        Token key = expect(TokenKind::String, "as alias source label");
        expect(TokenKind::Equals, "after alias source");
        Token target = expect(TokenKind::String, "as alias target label");
        if (spec_.aliases.count(key.text) > 0) {
            fail(key, "duplicate alias for \"" + key.text + "\"");
        }
        spec_.aliases[key.text] = target.text;
        spec_.spans["alias:" + key.text] = {keyword.line, keyword.column};
    }

    void parse_variable() {
        Token keyword = expect(TokenKind::Ident, "for variable");
        Token name = expect(TokenKind::Ident, "as variable name");
        if (spec_.variables.count(name.text) > 0 || spec_.interactions.count(name.text) > 0) {
            fail(name, "duplicate name '" + name.text + "'");
        }
        expect(TokenKind::LBrace, "to open the variable body");
        CausalVariable variable;
        variable.name = name.text;
        while (peek().kind != TokenKind::RBrace) {
            Token value_kw = expect(TokenKind::Ident, "('value') inside variable body");
            if (value_kw.text != "value") {
                fail(value_kw, "expected 'value' inside variable body, found '" + value_kw.text +
                                   "'");
            }
            Token value_name = expect(TokenKind::Ident, "as value name");
            if (variable.values.count(value_name.text) > 0) {
                fail(value_name, "duplicate value '" + value_name.text + "' in variable '" +
                                     name.text + "'");
            }
            expect(TokenKind::Colon, "after value name");
            std::set<std::string> labels;
            labels.insert(expect(TokenKind::String, "as entity label").text);
            while (peek().kind == TokenKind::Pipe) {
                ++pos_;
                labels.insert(expect(TokenKind::String, "as entity label").text);
            }
            variable.values[value_name.text] = std::move(labels);
        }
        expect(TokenKind::RBrace, "to close the variable body");
        if (variable.values.empty()) {
            fail(name, "variable '" + name.text + "' declares no values");
        }
        spec_.spans["variable:" + name.text] = {keyword.line, keyword.column};
        spec_.variables[name.text] = std::move(variable);
    }

    void parse_interaction() {
        Token keyword = expect(TokenKind::Ident, "for interaction");
        Token name = expect(TokenKind::String, "as interaction name");
        if (spec_.interactions.count(name.text) > 0 || spec_.variables.count(name.text) > 0) {
            fail(name, "duplicate name \"" + name.text + "\"");
        }
        expect(TokenKind::Equals, "after interaction name");
        ArtificialNode node;
        node.name = name.text;
        node.constituents.insert(parse_constituent());
        expect(TokenKind::Amp, "between interaction constituents");
        node.constituents.insert(parse_constituent());
        while (peek().kind == TokenKind::Amp) {
            ++pos_;
            node.constituents.insert(parse_constituent());
        }
        spec_.spans["interaction:" + name.text] = {keyword.line, keyword.column};
        spec_.interactions[name.text] = std::move(node);
    }

    Constituent parse_constituent() {
        expect(TokenKind::LParen, "to open a constituent");
        Token variable = expect(TokenKind::Ident, "as constituent variable");
        expect(TokenKind::Equals, "inside constituent");
        Token value = expect(TokenKind::Ident, "as constituent value");
        expect(TokenKind::RParen, "to close the constituent");
        return {variable.text, value.text};
    }

    void parse_deny() {
        Token keyword = expect(TokenKind::Ident, "for deny");
        Token cause = expect(TokenKind::Ident, "as denied cause");
        expect(TokenKind::Arrow, "between denied cause and effect");
        Token effect = expect(TokenKind::Ident, "as denied effect");
        DeniedRelation denial{cause.text, effect.text};
        if (spec_.denials.count(denial) > 0) {
            fail(cause, "duplicate denial " + cause.text + " -> " + effect.text);
        }
        spec_.denials.insert(denial);
        spec_.spans["deny:" + cause.text + "->" + effect.text] = {keyword.line, keyword.column};
    }

    void parse_config() {
        Token keyword = expect(TokenKind::Ident, "for set");
        Token key = expect(TokenKind::Ident, "as config key");
        expect(TokenKind::Equals, "after config key");
        const Token& value = peek();
        if (value.kind != TokenKind::Number && value.kind != TokenKind::Ident) {
            fail(value, "expected number or identifier as config value");
        }
        ++pos_;
        if (key.text == "near_dup_threshold") {
            if (value.kind != TokenKind::Number) {
                fail(value, "near_dup_threshold takes a number in [0,1]");
            }
            double threshold = std::strtod(value.text.c_str(), nullptr);
            if (threshold < 0.0 || threshold > 1.0) {
                fail(value, "near_dup_threshold must lie in [0,1], got " + value.text);
            }
            spec_.config.near_dup_threshold = threshold;
        } else if (key.text == "max_path_len") {
            if (value.kind != TokenKind::Number ||
                value.text.find('.') != std::string::npos) {
                fail(value, "max_path_len takes a positive integer");
            }
            long parsed = std::strtol(value.text.c_str(), nullptr, 10);
            if (parsed < 1) {
                fail(value, "max_path_len must be >= 1, got " + value.text);
            }
            spec_.config.max_path_len = static_cast<int>(parsed);
        } else {
            fail(key, "unknown config key '" + key.text +
                          "' (recognized: near_dup_threshold, max_path_len)");
        }
        spec_.spans["set:" + key.text] = {keyword.line, keyword.column};
    }

    // Checks that run once the whole input is materialized.
    void finish() {
        for (const auto& [key, target] : spec_.aliases) {
            if (key != target && spec_.aliases.count(target) > 0) {
                const SourceSpan* span = spec_.span_of("alias:" + key);
                int line = span ? span->line : 0;
                int column = span ? span->column : 0;
                throw ParseError(std::to_string(line) + ":" + std::to_string(column) +
                                     ": alias chain: \"" + key + "\" -> \"" + target +
                                     "\" where \"" + target + "\" is itself an alias key",
                                 line, column);
            }
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    CurationSpec spec_;
};

std::string escape_string(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    out += '"';
    return out;
}

// Shortest decimal spelling that parses back to exactly the same double.
std::string format_threshold(double value) {
    char buffer[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
        if (std::strtod(buffer, nullptr) == value) break;
    }
    return buffer;
}

}  // namespace

CurationSpec parse_curation(std::string_view text) {
    Lexer lexer(text);
    Parser parser(lexer.run());
    return parser.run();
}

std::string pretty_print(const CurationSpec& spec) {
    std::string out;
    SpecConfig defaults;
    if (spec.config.near_dup_threshold != defaults.near_dup_threshold) {
        out += "set near_dup_threshold = " + format_threshold(spec.config.near_dup_threshold) +
               "\n";
    }
    if (spec.config.max_path_len != defaults.max_path_len) {
        out += "set max_path_len = " + std::to_string(spec.config.max_path_len) + "\n";
    }
    for (const auto& [key, target] : spec.aliases) {
        out += "alias " + escape_string(key) + " = " + escape_string(target) + "\n";
    }
    for (const auto& [name, variable] : spec.variables) {
        out += "variable " + name + " {\n";
        for (const auto& [value_name, labels] : variable.values) {
            out += "  value " + value_name + ":";
            bool first = true;
            for (const std::string& label : labels) {
                out += first ? " " : " | ";
                out += escape_string(label);
                first = false;
            }
            out += "\n";
        }
        out += "}\n";
    }
    for (const auto& [name, interaction] : spec.interactions) {
        out += "interaction " + escape_string(name) + " =";
        bool first = true;
        for (const Constituent& c : interaction.constituents) {
            out += first ? " " : " & ";
            out += "(" + c.variable + " = " + c.value + ")";
            first = false;
        }
        out += "\n";
    }
    for (const DeniedRelation& denial : spec.denials) {
        out += "deny " + denial.cause + " -> " + denial.effect + "\n";
    }
    return out;
}

}  // namespace cogmap
