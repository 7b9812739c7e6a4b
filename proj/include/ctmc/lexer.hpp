#ifndef CTMC_LEXER_HPP
#define CTMC_LEXER_HPP

#include <string>
#include <vector>

#include "ctmc/errors.hpp"
#include "ctmc/rational.hpp"

namespace ctmc {

enum class Tok {
    Ident, Number, String,
    LBracket, RBracket, LParen, RParen, LBrace, RBrace,
    Semicolon, Colon, Comma, DotDot, Prime, Arrow, Query,
    Plus, Minus, Star,
    Amp, Pipe, Bang,
    Eq, EqQuery, Ne, Lt, Le, Gt, Ge,
    ReactionAnno,   // //@reaction N
    End,
};

struct Token {
    Tok type;
    std::string text;       // Ident / String payload
    Rational number;        // Number / ReactionAnno payload
    SourcePos pos;
};

// Tokenizes a whole source buffer. `//` comments run to end of line; the
// structured form `//@reaction N` is kept as a token.
std::vector<Token> lex(const std::string& source, const std::string& filename);

const char* token_name(Tok t);

} // namespace ctmc

#endif
