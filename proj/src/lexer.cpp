#include "ctmc/lexer.hpp"

#include <cctype>

namespace ctmc {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

std::vector<Token> lex(const std::string& src, const std::string& filename) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;

    auto pos_here = [&]() { return SourcePos{filename, line, col}; };
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') { ++line; col = 1; } else { ++col; }
            ++i;
        }
    };
    auto push = [&](Tok t, SourcePos p) { out.push_back({t, "", Rational(0), std::move(p)}); };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }

        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            SourcePos p = pos_here();
            std::size_t j = i + 2;
            // structured annotation: //@reaction N
            if (src.compare(j, 9, "@reaction") == 0) {
                j += 9;
                while (j < src.size() && (src[j] == ' ' || src[j] == '\t')) ++j;
                std::string digits;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) digits += src[j++];
                if (digits.empty()) throw LexError(p, "expected reaction number after //@reaction");
                Token t{Tok::ReactionAnno, "", Rational::from_decimal_string(digits), p};
                out.push_back(std::move(t));
            }
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }

        SourcePos p = pos_here();
        if (ident_start(c)) {
            std::string name;
            while (i < src.size() && ident_char(src[i])) { name += src[i]; advance(1); }
            Token t{Tok::Ident, std::move(name), Rational(0), p};
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            bool dot = false;
            while (i < src.size() &&
                   (std::isdigit(static_cast<unsigned char>(src[i])) || (src[i] == '.' && !dot))) {
                // ".." starts a range, not a fraction
                if (src[i] == '.') {
                    if (i + 1 < src.size() && src[i + 1] == '.') break;
                    dot = true;
                }
                text += src[i];
                advance(1);
            }
            Token t{Tok::Number, "", Rational::from_decimal_string(text), p};
            out.push_back(std::move(t));
            continue;
        }
        if (c == '"') {
            advance(1);
            std::string text;
            while (i < src.size() && src[i] != '"' && src[i] != '\n') { text += src[i]; advance(1); }
            if (i >= src.size() || src[i] != '"') throw LexError(p, "unterminated string");
            advance(1);
            Token t{Tok::String, std::move(text), Rational(0), p};
            out.push_back(std::move(t));
            continue;
        }

        auto two = [&](char a, char b) {
            return c == a && i + 1 < src.size() && src[i + 1] == b;
        };
        if (two('-', '>')) { push(Tok::Arrow, p); advance(2); continue; }
        if (two('.', '.')) { push(Tok::DotDot, p); advance(2); continue; }
        if (two('<', '=')) { push(Tok::Le, p); advance(2); continue; }
        if (two('>', '=')) { push(Tok::Ge, p); advance(2); continue; }
        if (two('!', '=')) { push(Tok::Ne, p); advance(2); continue; }
        if (two('=', '?')) { push(Tok::EqQuery, p); advance(2); continue; }

        switch (c) {
            case '[': push(Tok::LBracket, p); break;
            case ']': push(Tok::RBracket, p); break;
            case '(': push(Tok::LParen, p); break;
            case ')': push(Tok::RParen, p); break;
            case '{': push(Tok::LBrace, p); break;
            case '}': push(Tok::RBrace, p); break;
            case ';': push(Tok::Semicolon, p); break;
            case ':': push(Tok::Colon, p); break;
            case ',': push(Tok::Comma, p); break;
            case '\'': push(Tok::Prime, p); break;
            case '?': push(Tok::Query, p); break;
            case '+': push(Tok::Plus, p); break;
            case '-': push(Tok::Minus, p); break;
            case '*': push(Tok::Star, p); break;
            case '&': push(Tok::Amp, p); break;
            case '|': push(Tok::Pipe, p); break;
            case '!': push(Tok::Bang, p); break;
            case '=': push(Tok::Eq, p); break;
            case '<': push(Tok::Lt, p); break;
            case '>': push(Tok::Gt, p); break;
            default:
                throw LexError(p, std::string("unexpected character '") + c + "'");
        }
        advance(1);
    }
    out.push_back({Tok::End, "", Rational(0), pos_here()});
    return out;
}

const char* token_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::String: return "string";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Semicolon: return "';'";
        case Tok::Colon: return "':'";
        case Tok::Comma: return "','";
        case Tok::DotDot: return "'..'";
        case Tok::Prime: return "'''";
        case Tok::Arrow: return "'->'";
        case Tok::Query: return "'?'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Amp: return "'&'";
        case Tok::Pipe: return "'|'";
        case Tok::Bang: return "'!'";
        case Tok::Eq: return "'='";
        case Tok::EqQuery: return "'=?'";
        case Tok::Ne: return "'!='";
        case Tok::Lt: return "'<'";
        case Tok::Le: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Ge: return "'>='";
        case Tok::ReactionAnno: return "reaction annotation";
        case Tok::End: return "end of input";
    }
    return "?";
}

} // namespace ctmc
