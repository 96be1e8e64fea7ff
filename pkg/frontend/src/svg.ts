export type Attrs = Record<string, string | number>;

export function esc(s: string): string {
  return s
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function attrText(attrs: Attrs): string {
  return Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${typeof v === 'number' ? fmt(v) : esc(v)}"`)
    .join('');
}

/** Compact coordinate formatting keeps the SVG readable and small. */
export function fmt(x: number): string {
  if (!Number.isFinite(x)) return '0';
  const r = Math.round(x * 100) / 100;
  return Object.is(r, -0) ? '0' : String(r);
}

export function el(tag: string, attrs: Attrs, children?: string | string[]): string {
  const body = children === undefined ? '' : Array.isArray(children) ? children.join('') : children;
  if (body === '') return `<${tag}${attrText(attrs)}/>`;
  return `<${tag}${attrText(attrs)}>${body}</${tag}>`;
}

export function text(x: number, y: number, s: string, attrs: Attrs = {}): string {
  return el('text', { x, y, 'font-family': 'DejaVu Sans, sans-serif', ...attrs }, esc(s));
}

export function document(width: number, height: number, parts: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">` +
    el('rect', { width, height, fill: 'white' }) +
    parts.join('') +
    '</svg>'
  );
}
