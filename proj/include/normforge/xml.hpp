#pragma once

// Minimal strict XML subset used by the interchange format: one root
// element, attributes, character data, comments, an optional XML
// declaration, and the five predefined entities plus numeric character
// references. No namespaces, DTDs, processing instructions or CDATA.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace normforge {

class XmlError : public Error {
public:
    XmlError(int line, int column, const std::string& what)
        : Error("XML error at line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + what),
          line(line),
          column(column) {}

    int line;
    int column;
};

struct XmlNode {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlNode> children;
    std::string text;  // concatenated character data
    int line = 0;
    int column = 0;

    const std::string* attr(std::string_view key) const {
        for (const auto& [k, v] : attrs)
            if (k == key) return &v;
        return nullptr;
    }

    const XmlNode* child(std::string_view name_) const {
        for (const auto& c : children)
            if (c.name == name_) return &c;
        return nullptr;
    }
};

namespace xml_detail {

inline bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

inline bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

class Reader {
public:
    explicit Reader(std::string_view input) : in_(input) {}

    XmlNode parse_document() {
        skip_bom();
        skip_misc();
        if (!at('<')) fail("expected root element");
        XmlNode root = parse_element();
        skip_misc();
        if (pos_ != in_.size()) fail("content after root element");
        return root;
    }

private:
    XmlNode parse_element() {
        int eline = line_, ecol = col_;
        expect('<');
        XmlNode node;
        node.line = eline;
        node.column = ecol;
        node.name = parse_name();
        while (true) {
            skip_ws();
            if (at('>')) {
                advance();
                break;
            }
            if (at('/')) {
                advance();
                expect('>');
                return node;
            }
            auto key = parse_name();
            skip_ws();
            expect('=');
            skip_ws();
            node.attrs.emplace_back(std::move(key), parse_quoted());
        }
        // Content until the matching close tag.
        while (true) {
            if (pos_ >= in_.size()) fail("unexpected end of input inside <" + node.name + ">");
            if (at('<')) {
                if (lookahead("<!--")) {
                    skip_comment();
                    continue;
                }
                if (lookahead("</")) {
                    advance();
                    advance();
                    std::string close = parse_name();
                    if (close != node.name)
                        fail("mismatched close tag </" + close + "> for <" + node.name + ">");
                    skip_ws();
                    expect('>');
                    return node;
                }
                node.children.push_back(parse_element());
                continue;
            }
            node.text += parse_text();
        }
    }

    std::string parse_name() {
        if (pos_ >= in_.size() || !is_name_start(in_[pos_])) fail("expected a name");
        size_t begin = pos_;
        while (pos_ < in_.size() && is_name_char(in_[pos_])) advance();
        return std::string(in_.substr(begin, pos_ - begin));
    }

    std::string parse_quoted() {
        if (!at('"') && !at('\'')) fail("expected a quoted attribute value");
        char quote = in_[pos_];
        advance();
        std::string out;
        while (true) {
            if (pos_ >= in_.size()) fail("unterminated attribute value");
            char c = in_[pos_];
            if (c == quote) {
                advance();
                return out;
            }
            if (c == '<') fail("'<' inside attribute value");
            if (c == '&') {
                out += parse_entity();
                continue;
            }
            out += c;
            advance();
        }
    }

    std::string parse_text() {
        std::string out;
        while (pos_ < in_.size() && !at('<')) {
            char c = in_[pos_];
            if (c == '&') {
                out += parse_entity();
                continue;
            }
            out += c;
            advance();
        }
        return out;
    }

    std::string parse_entity() {
        int eline = line_, ecol = col_;
        expect('&');
        size_t begin = pos_;
        while (pos_ < in_.size() && in_[pos_] != ';' && pos_ - begin < 12) advance();
        if (pos_ >= in_.size() || in_[pos_] != ';')
            throw XmlError(eline, ecol, "unterminated entity reference");
        std::string name(in_.substr(begin, pos_ - begin));
        advance();
        if (name == "amp") return "&";
        if (name == "lt") return "<";
        if (name == "gt") return ">";
        if (name == "quot") return "\"";
        if (name == "apos") return "'";
        if (!name.empty() && name[0] == '#') return decode_charref(name, eline, ecol);
        throw XmlError(eline, ecol, "unknown entity &" + name + ";");
    }

    std::string decode_charref(const std::string& name, int eline, int ecol) {
        unsigned long cp = 0;
        try {
            cp = name.size() > 1 && (name[1] == 'x' || name[1] == 'X')
                     ? std::stoul(name.substr(2), nullptr, 16)
                     : std::stoul(name.substr(1), nullptr, 10);
        } catch (const std::exception&) {
            throw XmlError(eline, ecol, "bad character reference &" + name + ";");
        }
        if (cp == 0 || cp > 0x10FFFF)
            throw XmlError(eline, ecol, "character reference out of range");
        std::string out;
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
        return out;
    }

    void skip_bom() {
        if (in_.size() >= 3 && in_.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            pos_ = 3;
            col_ = 1;
        }
    }

    void skip_misc() {
        while (pos_ < in_.size()) {
            if (std::isspace(static_cast<unsigned char>(in_[pos_]))) {
                advance();
            } else if (lookahead("<?")) {
                skip_declaration();
            } else if (lookahead("<!--")) {
                skip_comment();
            } else {
                break;
            }
        }
    }

    void skip_declaration() {
        int dline = line_, dcol = col_;
        while (pos_ < in_.size()) {
            if (lookahead("?>")) {
                advance();
                advance();
                return;
            }
            advance();
        }
        throw XmlError(dline, dcol, "unterminated XML declaration");
    }

    void skip_comment() {
        int cline = line_, ccol = col_;
        pos_ += 4;
        col_ += 4;
        while (pos_ < in_.size()) {
            if (lookahead("-->")) {
                advance();
                advance();
                advance();
                return;
            }
            advance();
        }
        throw XmlError(cline, ccol, "unterminated comment");
    }

    void skip_ws() {
        while (pos_ < in_.size() &&
               (in_[pos_] == ' ' || in_[pos_] == '\t' || in_[pos_] == '\r' ||
                in_[pos_] == '\n'))
            advance();
    }

    bool at(char c) const { return pos_ < in_.size() && in_[pos_] == c; }

    bool lookahead(std::string_view s) const {
        return in_.size() - pos_ >= s.size() && in_.compare(pos_, s.size(), s) == 0;
    }

    void expect(char c) {
        if (!at(c)) fail(std::string("expected '") + c + "'");
        advance();
    }

    void advance() {
        if (in_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw XmlError(line_, col_, what);
    }

    std::string_view in_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string escape_attr(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#10;"; break;
            case '\t': out += "&#9;"; break;
            default: out += c;
        }
    }
    return out;
}

inline void write_node(std::string& out, const XmlNode& node, int depth) {
    out.append(static_cast<size_t>(depth) * 2, ' ');
    out += '<';
    out += node.name;
    for (const auto& [k, v] : node.attrs) {
        out += ' ';
        out += k;
        out += "=\"";
        out += escape_attr(v);
        out += '"';
    }
    if (node.children.empty() && node.text.empty()) {
        out += "/>\n";
        return;
    }
    out += '>';
    if (node.children.empty()) {
        out += escape_text(node.text);
        out += "</";
        out += node.name;
        out += ">\n";
        return;
    }
    out += '\n';
    for (const auto& c : node.children) write_node(out, c, depth + 1);
    out.append(static_cast<size_t>(depth) * 2, ' ');
    out += "</";
    out += node.name;
    out += ">\n";
}

}  // namespace xml_detail

inline XmlNode parse_xml(std::string_view input) {
    xml_detail::Reader reader(input);
    return reader.parse_document();
}

// Canonical bytes: declaration, 2-space indent, fixed attribute order as
// built, "/>" for empty elements, LF newlines.
inline std::string write_xml(const XmlNode& root) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    xml_detail::write_node(out, root, 0);
    return out;
}

}  // namespace normforge
