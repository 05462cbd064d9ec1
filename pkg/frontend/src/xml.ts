/** Tiny XML element scanner, enough for machine-written graph files.
 *
 * Handles nested and self-closing elements, attributes, standard and
 * numeric entities, comments, prolog, and doctype. Text content is not
 * collected; the graph formats carry everything in attributes.
 */

export interface XmlElement {
  name: string;
  attributes: Map<string, string>;
  children: XmlElement[];
}

const NAMED_ENTITIES: Record<string, string> = {
  amp: "&",
  lt: "<",
  gt: ">",
  quot: '"',
  apos: "'",
};

export function decodeEntities(text: string): string {
  return text.replace(/&(#x?[0-9a-fA-F]+|[a-zA-Z]+);/g, (whole, body: string) => {
    if (body.startsWith("#x") || body.startsWith("#X")) {
      return String.fromCodePoint(parseInt(body.slice(2), 16));
    }
    if (body.startsWith("#")) {
      return String.fromCodePoint(parseInt(body.slice(1), 10));
    }
    const named = NAMED_ENTITIES[body];
    if (named === undefined) {
      throw new Error(`unknown entity ${JSON.stringify(whole)}`);
    }
    return named;
  });
}

function localName(name: string): string {
  const colon = name.indexOf(":");
  return colon === -1 ? name : name.slice(colon + 1);
}

const ATTRIBUTE_PATTERN = /([^\s=/>]+)\s*=\s*("([^"]*)"|'([^']*)')/g;

function parseAttributes(tag: string): Map<string, string> {
  const attributes = new Map<string, string>();
  for (const match of tag.matchAll(ATTRIBUTE_PATTERN)) {
    const value = match[3] !== undefined ? match[3] : match[4];
    attributes.set(localName(match[1]), decodeEntities(value));
  }
  return attributes;
}

/** Parse a document and return its root element. */
export function parseXml(text: string): XmlElement {
  const root: XmlElement = { name: "", attributes: new Map(), children: [] };
  const stack: XmlElement[] = [root];
  let i = 0;
  while (i < text.length) {
    const open = text.indexOf("<", i);
    if (open === -1) break;
    if (text.startsWith("<!--", open)) {
      const end = text.indexOf("-->", open);
      if (end === -1) throw new Error("unterminated comment");
      i = end + 3;
      continue;
    }
    if (text.startsWith("<?", open) || text.startsWith("<!", open)) {
      const end = text.indexOf(">", open);
      if (end === -1) throw new Error("unterminated declaration");
      i = end + 1;
      continue;
    }
    const close = text.indexOf(">", open);
    if (close === -1) throw new Error("unterminated tag");
    const body = text.slice(open + 1, close).trim();
    i = close + 1;
    if (body.startsWith("/")) {
      const name = localName(body.slice(1).trim());
      const top = stack[stack.length - 1];
      if (stack.length === 1 || top.name !== name) {
        throw new Error(`unexpected closing tag </${name}>`);
      }
      stack.pop();
      continue;
    }
    const selfClosing = body.endsWith("/");
    const content = selfClosing ? body.slice(0, -1) : body;
    const nameEnd = content.search(/[\s/]/);
    const name = localName(nameEnd === -1 ? content : content.slice(0, nameEnd));
    if (name === "") throw new Error("empty tag name");
    const node: XmlElement = {
      name,
      attributes: parseAttributes(nameEnd === -1 ? "" : content.slice(nameEnd)),
      children: [],
    };
    stack[stack.length - 1].children.push(node);
    if (!selfClosing) stack.push(node);
  }
  if (stack.length !== 1) {
    throw new Error(`unclosed element <${stack[stack.length - 1].name}>`);
  }
  if (root.children.length !== 1) {
    throw new Error(`expected one root element, found ${root.children.length}`);
  }
  return root.children[0];
}

/** All descendants with the given local name, in document order. */
export function descendants(element: XmlElement, name: string): XmlElement[] {
  const found: XmlElement[] = [];
  const walk = (node: XmlElement) => {
    for (const child of node.children) {
      if (child.name === name) found.push(child);
      walk(child);
    }
  };
  walk(element);
  return found;
}
